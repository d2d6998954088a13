// Text and JSON encodings of tree documents.

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tft/tree.hpp"

namespace tft {

namespace {

using json = nlohmann::json;

std::string FormatNumber(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Drops a trailing '#' comment that is not inside a quoted string.
std::string_view StripComment(std::string_view line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && quoted) {
      ++i;
    } else if (line[i] == '"') {
      quoted = !quoted;
    } else if (line[i] == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

// Cursor over one line with error reporting in line/column terms.
class LineScanner {
 public:
  LineScanner(std::string_view line, int number)
      : line_(line), number_(number) {}

  bool AtEnd() {
    SkipSpace();
    return pos_ >= line_.size();
  }

  int column() const { return static_cast<int>(pos_) + 1; }
  size_t pos() const { return pos_; }
  std::string_view Rest() const { return line_.substr(pos_); }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw ParseError(msg, number_, column());
  }

  std::string Word() {
    SkipSpace();
    const size_t start = pos_;
    while (pos_ < line_.size() &&
           !std::isspace(static_cast<unsigned char>(line_[pos_])) &&
           line_[pos_] != '=')
      ++pos_;
    if (start == pos_) Fail("expected an identifier");
    return std::string(line_.substr(start, pos_ - start));
  }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= line_.size() || line_[pos_] != c)
      Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // key=value, where value is "quoted", (parenthesized) or a bare word.
  std::pair<std::string, std::string> KeyValue() {
    SkipSpace();
    const size_t start = pos_;
    while (pos_ < line_.size() &&
           (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
            line_[pos_] == '_'))
      ++pos_;
    if (start == pos_) Fail("expected key=value");
    std::string key(line_.substr(start, pos_ - start));
    if (pos_ >= line_.size() || line_[pos_] != '=')
      Fail("expected '=' after '" + key + "'");
    ++pos_;
    value_column_ = column();
    std::string value;
    if (pos_ < line_.size() && line_[pos_] == '"') {
      ++pos_;
      bool closed = false;
      while (pos_ < line_.size()) {
        char c = line_[pos_++];
        if (c == '\\' && pos_ < line_.size()) {
          value += line_[pos_++];
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value += c;
        }
      }
      if (!closed) Fail("unterminated string");
    } else if (pos_ < line_.size() && line_[pos_] == '(') {
      const size_t close = line_.find(')', pos_);
      if (close == std::string_view::npos) Fail("unbalanced '('");
      value = std::string(line_.substr(pos_, close - pos_ + 1));
      pos_ = close + 1;
    } else {
      const size_t vstart = pos_;
      while (pos_ < line_.size() &&
             !std::isspace(static_cast<unsigned char>(line_[pos_])))
        ++pos_;
      value = std::string(line_.substr(vstart, pos_ - vstart));
    }
    return {std::move(key), std::move(value)};
  }

  double Number(std::string_view text) const {
    text = Trim(text);
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
      throw ParseError("invalid number '" + std::string(text) + "'", number_,
                       value_column_);
    return v;
  }

  std::vector<double> NumberList(std::string_view text) const {
    std::vector<double> out;
    while (true) {
      const size_t comma = text.find(',');
      out.push_back(Number(text.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return out;
  }

  bool Bool(std::string_view text) const {
    if (text == "true" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "no" || text == "0") return false;
    throw ParseError("expected true or false, got '" + std::string(text) + "'",
                     number_, value_column_);
  }

  int number() const { return number_; }

 private:
  void SkipSpace() {
    while (pos_ < line_.size() &&
           std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
  }

  std::string_view line_;
  int number_;
  size_t pos_ = 0;
  int value_column_ = 0;
};

// Turns a parsed expression into gates named after `id`; nested
// sub-expressions become anonymous gates id.1, id.2, ... in pre-order.
void LowerExpression(const Expression& expr, const std::string& id,
                     bool anonymous, std::vector<Gate>& out) {
  int counter = 0;
  std::function<void(const Expression&, const std::string&, bool)> lower =
      [&](const Expression& e, const std::string& gate_id, bool anon) {
        Gate g;
        g.id = gate_id;
        g.anonymous = anon;
        if (!e.kind) {
          g.kind = GateKind::kOr;
          g.children.push_back(e.id);
          out.push_back(std::move(g));
          return;
        }
        g.kind = *e.kind;
        const size_t slot = out.size();
        out.push_back(g);
        for (const Expression& c : e.children) {
          if (!c.kind) {
            out[slot].children.push_back(c.id);
          } else {
            std::string child_id = id + "." + std::to_string(++counter);
            out[slot].children.push_back(child_id);
            lower(c, child_id, true);
          }
        }
      };
  lower(expr, id, anonymous);
}

Expression ParseAt(std::string_view full_line, size_t offset, int line) {
  // Pad so that reported columns refer to the whole line.
  std::string padded(offset, ' ');
  padded += full_line.substr(offset);
  return ParseExpression(padded, nullptr, line);
}

void ParseDirective(LineScanner& s, Directive& d,
                    std::set<std::string>& seen) {
  while (!s.AtEnd()) {
    auto [key, value] = s.KeyValue();
    if (!seen.insert(key).second) s.Fail("directive key '" + key + "' repeated");
    if (key == "spread") {
      d.spread = s.Number(value);
    } else if (key == "times") {
      d.times = s.NumberList(value);
    } else if (key == "importance_time") {
      d.importance_time = s.Number(value);
    } else if (key == "clamp") {
      d.clamp = s.Bool(value);
    } else if (key == "custom_spread") {
      d.custom_spread = s.Bool(value);
    } else {
      s.Fail("unknown directive key '" + key + "'");
    }
  }
}

Tfn ParseTriple(const LineScanner& s, std::string_view value) {
  std::string_view inner = value.substr(1, value.size() - 2);
  std::vector<double> v = s.NumberList(inner);
  if (v.size() != 3) s.Fail("fuzzy rate needs three components");
  try {
    return Tfn(v[0], v[1], v[2]);
  } catch (const DomainError& e) {
    s.Fail(e.what());
  }
}

BasicEvent ParseEvent(LineScanner& s) {
  BasicEvent e;
  e.id = s.Word();
  std::set<std::string> seen;
  while (!s.AtEnd()) {
    auto [key, value] = s.KeyValue();
    if (!seen.insert(key).second) s.Fail("event key '" + key + "' repeated");
    if (key == "rate") {
      if (!value.empty() && value.front() == '(') {
        e.fuzzy_rate = ParseTriple(s, value);
      } else {
        e.crisp_rate = s.Number(value);
      }
    } else if (key == "spread") {
      e.spread = s.Number(value);
    } else if (key == "desc") {
      e.description = value;
    } else {
      s.Fail("unknown event key '" + key + "'");
    }
  }
  if (!seen.contains("rate")) s.Fail("event '" + e.id + "' needs rate=");
  return e;
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Expression text for a gate with anonymous children inlined.
std::string GateExpression(const FaultTree& tree, const Gate& g) {
  const std::string op = " " + std::string(ToString(g.kind)) + " ";
  std::string out;
  for (size_t i = 0; i < g.children.size(); ++i) {
    if (i) out += op;
    const Gate* child = tree.FindGate(g.children[i]);
    if (child && child->anonymous) {
      out += "(" + GateExpression(tree, *child) + ")";
    } else {
      out += g.children[i];
    }
  }
  return out;
}

std::string TopExpression(const FaultTree& tree) {
  const Gate* top = tree.FindGate(tree.top());
  if (top && top->anonymous) return GateExpression(tree, *top);
  return tree.top();
}

void SetTop(TreeDocument& doc, const Expression& expr) {
  if (!expr.kind) {
    doc.top = expr.id;
    return;
  }
  doc.top = "top";
  LowerExpression(expr, "top", true, doc.gates);
}

std::string StemOf(const std::string& source) {
  if (source.empty()) return {};
  return std::filesystem::path(source).stem().string();
}

}  // namespace

TreeDocument ParseTextDocument(std::string_view text, std::string source) {
  TreeDocument doc;
  doc.name = StemOf(source);
  doc.source = std::move(source);
  std::set<std::string> directive_keys;
  bool have_top = false;
  int number = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = StripComment(raw);
    if (Trim(line).empty()) continue;

    LineScanner s(line, number);
    const std::string keyword = s.Word();
    if (keyword == "directive") {
      ParseDirective(s, doc.directive, directive_keys);
    } else if (keyword == "event") {
      doc.events.push_back(ParseEvent(s));
    } else if (keyword == "gate") {
      const std::string id = s.Word();
      s.Expect('=');
      if (s.AtEnd()) s.Fail("gate '" + id + "' has an empty expression");
      LowerExpression(ParseAt(line, s.pos(), number), id, false, doc.gates);
    } else if (keyword == "top") {
      if (have_top) s.Fail("top event declared twice");
      s.Expect('=');
      if (s.AtEnd()) s.Fail("empty top expression");
      SetTop(doc, ParseAt(line, s.pos(), number));
      have_top = true;
    } else {
      throw ParseError("unknown statement '" + keyword +
                           "' (expected directive, event, gate or top)",
                       number, 1);
    }
  }
  return doc;
}

TreeDocument ParseJsonDocument(std::string_view text, std::string source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON syntax: ") + e.what(), 0, 0);
  }
  TreeDocument doc;
  doc.name = StemOf(source);
  doc.source = std::move(source);
  try {
    if (j.contains("name")) doc.name = j.at("name").get<std::string>();
    if (j.contains("directive")) {
      const json& d = j.at("directive");
      for (const auto& [key, _] : d.items())
        if (key != "spread" && key != "times" && key != "importance_time" &&
            key != "clamp" && key != "custom_spread")
          throw ParseError("unknown directive key '" + key + "'", 0, 0);
      doc.directive.spread = d.value("spread", 15.0);
      doc.directive.times = d.value("times", std::vector<double>{});
      if (d.contains("importance_time"))
        doc.directive.importance_time = d.at("importance_time").get<double>();
      doc.directive.clamp = d.value("clamp", false);
      doc.directive.custom_spread = d.value("custom_spread", false);
    }
    for (const json& je : j.value("events", json::array())) {
      BasicEvent e;
      e.id = je.at("id").get<std::string>();
      const json& rate = je.at("rate");
      if (rate.is_array()) {
        auto v = rate.get<std::vector<double>>();
        if (v.size() != 3)
          throw ParseError("event '" + e.id + "': fuzzy rate needs three components", 0, 0);
        try {
          e.fuzzy_rate = Tfn(v[0], v[1], v[2]);
        } catch (const DomainError& err) {
          throw ParseError("event '" + e.id + "': " + err.what(), 0, 0);
        }
      } else {
        e.crisp_rate = rate.get<double>();
      }
      if (je.contains("spread")) e.spread = je.at("spread").get<double>();
      e.description = je.value("desc", std::string{});
      doc.events.push_back(std::move(e));
    }
    for (const json& jg : j.value("gates", json::array())) {
      const std::string id = jg.at("id").get<std::string>();
      LowerExpression(ParseExpression(jg.at("expression").get<std::string>()),
                      id, false, doc.gates);
    }
    if (j.contains("top"))
      SetTop(doc, ParseExpression(j.at("top").get<std::string>()));
  } catch (const json::exception& e) {
    throw ParseError(std::string("JSON document: ") + e.what(), 0, 0);
  }
  return doc;
}

TreeDocument ParseDocument(std::string_view text, std::string source) {
  const std::string_view t = Trim(text);
  if (!t.empty() && t.front() == '{')
    return ParseJsonDocument(text, std::move(source));
  return ParseTextDocument(text, std::move(source));
}

FaultTree ParseTree(std::string_view text, std::string source) {
  return FaultTree::Build(ParseDocument(text, std::move(source)));
}

FaultTree LoadTree(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ParseTree(buf.str(), path);
}

std::string Serialize(const FaultTree& tree) {
  std::ostringstream os;
  const Directive& d = tree.directive();
  os << "directive spread=" << FormatNumber(d.spread);
  if (!d.times.empty()) {
    os << " times=";
    for (size_t i = 0; i < d.times.size(); ++i)
      os << (i ? "," : "") << FormatNumber(d.times[i]);
  }
  if (d.importance_time)
    os << " importance_time=" << FormatNumber(*d.importance_time);
  if (d.clamp) os << " clamp=true";
  if (d.custom_spread) os << " custom_spread=true";
  os << "\n";
  for (const BasicEvent& e : tree.events()) {
    os << "event " << e.id << " rate=";
    if (e.fuzzy_rate) {
      os << "(" << FormatNumber(e.fuzzy_rate->lower()) << ","
         << FormatNumber(e.fuzzy_rate->peak()) << ","
         << FormatNumber(e.fuzzy_rate->upper()) << ")";
    } else {
      os << FormatNumber(*e.crisp_rate);
    }
    if (e.spread) os << " spread=" << FormatNumber(*e.spread);
    if (!e.description.empty()) os << " desc=" << Quote(e.description);
    os << "\n";
  }
  for (const Gate& g : tree.gates()) {
    if (g.anonymous) continue;
    os << "gate " << g.id << " = " << GateExpression(tree, g) << "\n";
  }
  os << "top = " << TopExpression(tree) << "\n";
  return os.str();
}

std::string SerializeJson(const FaultTree& tree) {
  json j;
  j["name"] = tree.name();
  const Directive& d = tree.directive();
  json jd = {{"spread", d.spread}, {"times", d.times}};
  if (d.importance_time) jd["importance_time"] = *d.importance_time;
  if (d.clamp) jd["clamp"] = true;
  if (d.custom_spread) jd["custom_spread"] = true;
  j["directive"] = jd;
  json events = json::array();
  for (const BasicEvent& e : tree.events()) {
    json je = {{"id", e.id}};
    if (e.fuzzy_rate) {
      je["rate"] = {e.fuzzy_rate->lower(), e.fuzzy_rate->peak(),
                    e.fuzzy_rate->upper()};
    } else {
      je["rate"] = *e.crisp_rate;
    }
    if (e.spread) je["spread"] = *e.spread;
    if (!e.description.empty()) je["desc"] = e.description;
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  json gates = json::array();
  for (const Gate& g : tree.gates()) {
    if (g.anonymous) continue;
    gates.push_back({{"id", g.id}, {"expression", GateExpression(tree, g)}});
  }
  j["gates"] = std::move(gates);
  j["top"] = TopExpression(tree);
  return j.dump(2) + "\n";
}

}  // namespace tft
