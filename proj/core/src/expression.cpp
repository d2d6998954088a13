#include <cctype>
#include <string>

#include "tft/tree.hpp"

namespace tft {

namespace {

enum class TokenType { kIdent, kOperator, kOpen, kClose, kEnd };

struct Token {
  TokenType type = TokenType::kEnd;
  std::string text;
  GateKind op = GateKind::kAnd;
  int column = 0;
};

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '-' || c == '.';
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

struct Glyph {
  std::string_view bytes;
  GateKind kind;
};

constexpr Glyph kGlyphs[] = {
    {"◁", GateKind::kPand}, {"≀", GateKind::kPor},
    {"∩", GateKind::kAnd},  {"∧", GateKind::kAnd},
    {"∪", GateKind::kOr},   {"∨", GateKind::kOr},
    {"&", GateKind::kAnd},       {"|", GateKind::kOr},
};

class Lexer {
 public:
  Lexer(std::string_view text, int line) : text_(text), line_(line) {}

  Token Next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    Token tok;
    tok.column = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      tok.type = TokenType::kOpen;
      return tok;
    }
    if (c == ')') {
      ++pos_;
      tok.type = TokenType::kClose;
      return tok;
    }
    for (const Glyph& g : kGlyphs) {
      if (text_.substr(pos_, g.bytes.size()) == g.bytes) {
        pos_ += g.bytes.size();
        tok.type = TokenType::kOperator;
        tok.op = g.kind;
        tok.text = std::string(g.bytes);
        return tok;
      }
    }
    if (!IsIdentChar(c))
      throw ParseError("unexpected character '" + std::string(1, c) + "'",
                       line_, tok.column);
    const size_t start = pos_;
    while (pos_ < text_.size() && IsIdentChar(text_[pos_])) ++pos_;
    tok.text = std::string(text_.substr(start, pos_ - start));
    const std::string upper = Upper(tok.text);
    tok.type = TokenType::kOperator;
    if (upper == "AND") {
      tok.op = GateKind::kAnd;
    } else if (upper == "OR") {
      tok.op = GateKind::kOr;
    } else if (upper == "PAND") {
      tok.op = GateKind::kPand;
    } else if (upper == "POR") {
      tok.op = GateKind::kPor;
    } else {
      tok.type = TokenType::kIdent;
    }
    return tok;
  }

 private:
  std::string_view text_;
  int line_;
  size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text,
         const std::set<std::string, std::less<>>* known, int line)
      : lexer_(text, line), known_(known), line_(line) {
    Advance();
  }

  Expression ParseAll() {
    if (tok_.type == TokenType::kEnd) Fail("empty expression");
    Expression e = ParseOr();
    if (tok_.type == TokenType::kClose) Fail("unbalanced ')'");
    if (tok_.type != TokenType::kEnd)
      Fail("expected an operator before '" + tok_.text + "'");
    return e;
  }

 private:
  void Advance() { tok_ = lexer_.Next(); }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw ParseError(msg, line_, tok_.column);
  }

  bool AtOperator(GateKind kind) const {
    return tok_.type == TokenType::kOperator && tok_.op == kind;
  }

  // Same-operator chain at one precedence level, flattened.
  template <typename Next>
  Expression ParseChain(GateKind kind, Next next) {
    Expression first = (this->*next)();
    if (!AtOperator(kind)) return first;
    Expression node;
    node.kind = kind;
    node.column = first.column;
    node.children.push_back(std::move(first));
    while (AtOperator(kind)) {
      Advance();
      node.children.push_back((this->*next)());
    }
    return node;
  }

  Expression ParseOr() { return ParseChain(GateKind::kOr, &Parser::ParseAnd); }

  Expression ParseAnd() {
    return ParseChain(GateKind::kAnd, &Parser::ParseTemporal);
  }

  Expression ParseTemporal() {
    Expression node = ParsePrimary();
    std::optional<GateKind> chain;
    while (tok_.type == TokenType::kOperator && IsTemporal(tok_.op)) {
      const GateKind op = tok_.op;
      Advance();
      Expression rhs = ParsePrimary();
      if (chain == op) {
        node.children.push_back(std::move(rhs));
        continue;
      }
      Expression parent;
      parent.kind = op;
      parent.column = node.column;
      parent.children.push_back(std::move(node));
      parent.children.push_back(std::move(rhs));
      node = std::move(parent);
      chain = op;
    }
    return node;
  }

  Expression ParsePrimary() {
    if (tok_.type == TokenType::kOpen) {
      const int column = tok_.column;
      Advance();
      if (tok_.type == TokenType::kClose) Fail("empty parentheses");
      Expression inner = ParseOr();
      if (tok_.type != TokenType::kClose)
        throw ParseError("unbalanced '(' opened here", line_, column);
      Advance();
      return inner;
    }
    if (tok_.type == TokenType::kIdent) {
      if (known_ && !known_->contains(tok_.text))
        Fail("unknown identifier '" + tok_.text + "'");
      Expression leaf;
      leaf.id = tok_.text;
      leaf.column = tok_.column;
      Advance();
      return leaf;
    }
    if (tok_.type == TokenType::kOperator)
      Fail("operator '" + tok_.text + "' is missing its left operand");
    if (tok_.type == TokenType::kClose) Fail("unbalanced ')'");
    Fail("expression ends where an operand is expected");
  }

  Lexer lexer_;
  const std::set<std::string, std::less<>>* known_;
  int line_;
  Token tok_;
};

void Render(const Expression& e, std::string& out, bool nested) {
  if (!e.kind) {
    out += e.id;
    return;
  }
  if (nested) out += "(";
  const std::string op = " " + std::string(ToString(*e.kind)) + " ";
  for (size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += op;
    Render(e.children[i], out, true);
  }
  if (nested) out += ")";
}

}  // namespace

std::string_view ToString(GateKind kind) {
  switch (kind) {
    case GateKind::kAnd:
      return "AND";
    case GateKind::kOr:
      return "OR";
    case GateKind::kPand:
      return "PAND";
    case GateKind::kPor:
      return "POR";
  }
  return "?";
}

Expression ParseExpression(std::string_view text,
                           const std::set<std::string, std::less<>>* known,
                           int line) {
  return Parser(text, known, line).ParseAll();
}

std::string ToString(const Expression& expr) {
  std::string out;
  Render(expr, out, false);
  return out;
}

}  // namespace tft
