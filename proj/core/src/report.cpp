#include "tft/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tft {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const size_t comma = line.find(',');
    out.push_back(Trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

// JSON numbers carry the same 8 significant digits as the CSV.
nlohmann::json Rounded(double v) {
  return nlohmann::json::parse(FormatValue(v));
}

}  // namespace

std::string FormatValue(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8g", v == 0 ? 0.0 : v);
  return buf;
}

std::string SweepCsv(const AnalysisReport& report) {
  std::string out = "t,te_lower,te_peak,te_upper,te_defuzzified\n";
  for (const SweepEntry& e : report.entries) {
    out += FormatValue(e.t) + "," + FormatValue(e.te.lower()) + "," +
           FormatValue(e.te.peak()) + "," + FormatValue(e.te.upper()) + "," +
           FormatValue(e.defuzzified) + "\n";
  }
  return out;
}

std::string ImportanceCsv(const AnalysisReport& report) {
  std::string out = "event_id,fim,rank\n";
  for (const ImportanceRow& r : report.importance)
    out += r.event_id + "," + FormatValue(r.fim) + "," +
           std::to_string(r.rank) + "\n";
  return out;
}

std::string ReportJson(const AnalysisReport& report) {
  using nlohmann::json;
  json j;
  j["tree"] = report.tree_name;
  json entries = json::array();
  for (const SweepEntry& e : report.entries) {
    entries.push_back({{"t", Rounded(e.t)},
                       {"te", {Rounded(e.te.lower()), Rounded(e.te.peak()),
                               Rounded(e.te.upper())}},
                       {"defuzzified", Rounded(e.defuzzified)},
                       {"peak", Rounded(e.peak)}});
  }
  j["entries"] = std::move(entries);
  if (report.importance_time) {
    j["importance_time"] = Rounded(*report.importance_time);
    json rows = json::array();
    for (const ImportanceRow& r : report.importance)
      rows.push_back(
          {{"event_id", r.event_id}, {"fim", Rounded(r.fim)}, {"rank", r.rank}});
    j["importance"] = std::move(rows);
  }
  json diags = json::array();
  for (const Diagnostic& d : report.diagnostics)
    diags.push_back({{"severity", d.severity == Severity::kError ? "error"
                                                                 : "warning"},
                     {"code", d.code},
                     {"node", d.node_id},
                     {"message", d.message}});
  j["diagnostics"] = std::move(diags);
  return j.dump(2) + "\n";
}

std::string_view ToString(Interpretation i) {
  return i == Interpretation::kPeak ? "peak" : "centroid";
}

std::vector<ReferenceRow> ParseReferenceCsv(std::string_view text) {
  std::vector<ReferenceRow> rows;
  bool header = false;
  int line_no = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    const std::string_view line = Trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitFields(line);
    if (!header) {
      const std::vector<std::string_view> expected = {
          "t", "petri_net", "bayesian_network", "proposed"};
      if (fields != expected)
        throw ParseError(
            "reference header must be t,petri_net,bayesian_network,proposed",
            line_no, 1);
      header = true;
      continue;
    }
    if (fields.size() != 4)
      throw ParseError("expected 4 fields, got " +
                           std::to_string(fields.size()),
                       line_no, 1);
    double v[4];
    for (int k = 0; k < 4; ++k) {
      const std::string_view f = fields[k];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v[k]);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty())
        throw ParseError("invalid number '" + std::string(f) + "'", line_no,
                         1);
    }
    rows.push_back({v[0], v[1], v[2], v[3]});
  }
  if (!header) throw ParseError("reference table is empty", line_no, 1);
  return rows;
}

std::vector<ComparisonRow> Compare(const AnalysisReport& report,
                                   const std::vector<ReferenceRow>& reference,
                                   Interpretation interpretation) {
  std::vector<ComparisonRow> out;
  for (const SweepEntry& e : report.entries) {
    for (const ReferenceRow& r : reference) {
      if (std::abs(r.t - e.t) > 1e-9 * std::max(1.0, std::abs(e.t))) continue;
      ComparisonRow c;
      c.t = e.t;
      c.computed =
          interpretation == Interpretation::kPeak ? e.peak : e.defuzzified;
      c.reference = r;
      c.delta_petri_net = c.computed - r.petri_net;
      c.delta_bayesian_network = c.computed - r.bayesian_network;
      c.delta_proposed = c.computed - r.proposed;
      out.push_back(c);
      break;
    }
  }
  if (out.empty())
    throw DomainError("no sweep time matches a reference row");
  return out;
}

double RelativeDelta(double delta, double reference) {
  return reference == 0 ? 0 : delta / reference;
}

std::string ComparisonCsv(const std::vector<ComparisonRow>& rows) {
  std::string out =
      "t,computed,petri_net,delta_petri_net,rel_delta_petri_net,"
      "bayesian_network,delta_bayesian_network,rel_delta_bayesian_network,"
      "proposed,delta_proposed,rel_delta_proposed\n";
  for (const ComparisonRow& r : rows) {
    auto column = [&](double ref, double delta) {
      return "," + FormatValue(ref) + "," + FormatValue(delta) + "," +
             FormatValue(RelativeDelta(delta, ref));
    };
    out += FormatValue(r.t) + "," + FormatValue(r.computed) +
           column(r.reference.petri_net, r.delta_petri_net) +
           column(r.reference.bayesian_network, r.delta_bayesian_network) +
           column(r.reference.proposed, r.delta_proposed) + "\n";
  }
  return out;
}

}  // namespace tft
