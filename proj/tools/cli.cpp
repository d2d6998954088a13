#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tft/analysis.hpp"
#include "tft/report.hpp"
#include "tft/simulation.hpp"
#include "tft/tree.hpp"

namespace tft::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "csv";
  std::vector<double> times;
  std::optional<double> time;
  std::optional<double> spread;
  bool custom_spread = false;
  bool clamp = false;
  std::string reference;
  std::string interpretation = "centroid";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

// Failure carrying an exit code and a message for stderr.
struct Failure {
  int code;
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIo, path + ": cannot open file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Describe(const Diagnostic& d) {
  std::string s = d.severity == Severity::kError ? "error" : "warning";
  s += "[" + d.code + "]";
  if (!d.node_id.empty()) s += " " + d.node_id + ":";
  return s + " " + d.message;
}

FaultTree Load(const Options& o) {
  const std::string text = ReadFile(o.input);
  try {
    return ParseTree(text, o.input);
  } catch (const ParseError& e) {
    throw Failure{kInvalidInput, o.input + ": " + e.what()};
  } catch (const ValidationError& e) {
    std::string msg;
    for (const Diagnostic& d : e.diagnostics())
      if (d.severity == Severity::kError)
        msg += (msg.empty() ? "" : "\n") + o.input + ": " + Describe(d);
    throw Failure{kInvalidInput, msg};
  }
}

AnalysisConfig Configure(const FaultTree& tree, const Options& o) {
  AnalysisConfig c = AnalysisConfig::FromTree(tree);
  if (!o.times.empty()) c.times = o.times;
  if (o.spread) c.spread = *o.spread;
  if (o.custom_spread) c.custom_spread = true;
  if (o.clamp) c.clamp = true;
  return c;
}

void Emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  file << text;
  file.close();
  if (!file) throw Failure{kIo, o.output + ": cannot write file"};
}

std::string RenderReport(const AnalysisReport& r, const Options& o,
                         bool importance_only) {
  if (o.format == "json") return ReportJson(r);
  if (importance_only) return ImportanceCsv(r);
  std::string text = SweepCsv(r);
  if (!r.importance.empty()) text += "\n" + ImportanceCsv(r);
  return text;
}

void PrintWarnings(const AnalysisReport& r, const Options& o,
                   std::ostream& err) {
  for (const Diagnostic& d : r.diagnostics)
    err << o.input << ": " << Describe(d) << "\n";
}

void Analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const FaultTree tree = Load(o);
  AnalysisConfig c = Configure(tree, o);
  if (o.time) {
    c.times = {*o.time};
  } else if (!c.times.empty()) {
    c.times.resize(1);
  } else {
    throw Failure{kUsage, "analyze needs --time (the document has no times)"};
  }
  const AnalysisReport r = Sweep(tree, c);
  PrintWarnings(r, o, err);
  Emit(o, RenderReport(r, o, false), out);
}

void SweepCommand(const Options& o, std::ostream& out, std::ostream& err) {
  const FaultTree tree = Load(o);
  const AnalysisConfig c = Configure(tree, o);
  if (c.times.empty())
    throw Failure{kUsage, "sweep needs --times (the document has no times)"};
  const AnalysisReport r = Sweep(tree, c);
  PrintWarnings(r, o, err);
  if (o.reference.empty()) {
    Emit(o, RenderReport(r, o, false), out);
    return;
  }
  std::vector<ReferenceRow> reference;
  try {
    reference = ParseReferenceCsv(ReadFile(o.reference));
  } catch (const ParseError& e) {
    throw Failure{kInvalidInput, o.reference + ": " + e.what()};
  }
  const Interpretation how = o.interpretation == "peak"
                                 ? Interpretation::kPeak
                                 : Interpretation::kCentroid;
  Emit(o, ComparisonCsv(Compare(r, reference, how)), out);
}

void Importance(const Options& o, std::ostream& out, std::ostream& err) {
  const FaultTree tree = Load(o);
  AnalysisConfig c = Configure(tree, o);
  if (o.time) c.importance_time = o.time;
  if (!c.importance_time)
    throw Failure{kUsage,
                  "importance needs --time (the document sets no "
                  "importance_time)"};
  c.importance = true;
  c.times = {*c.importance_time};
  const AnalysisReport r = Sweep(tree, c);
  PrintWarnings(r, o, err);
  Emit(o, RenderReport(r, o, true), out);
}

void Simulate(const Options& o, std::ostream& out, std::ostream&) {
  const FaultTree tree = Load(o);
  std::optional<double> t = o.time;
  if (!t && !tree.directive().times.empty()) t = tree.directive().times.front();
  if (!t)
    throw Failure{kUsage, "simulate needs --time (the document has no times)"};
  SimulationConfig c;
  c.samples = o.samples;
  c.seed = o.seed;
  c.t = *t;
  const SimulationEstimate e = SimulateTree(tree, c);
  std::string text;
  if (o.format == "json") {
    text = "{\n  \"t\": " + FormatValue(c.t) + ",\n  \"probability\": " +
           FormatValue(e.probability) + ",\n  \"std_error\": " +
           FormatValue(e.std_error) + ",\n  \"samples\": " +
           std::to_string(e.samples) + ",\n  \"seed\": " +
           std::to_string(c.seed) + "\n}\n";
  } else {
    text = "t,probability,std_error,samples,seed\n" + FormatValue(c.t) + "," +
           FormatValue(e.probability) + "," + FormatValue(e.std_error) + "," +
           std::to_string(e.samples) + "," + std::to_string(c.seed) + "\n";
  }
  Emit(o, text, out);
}

void ValidateCommand(const Options& o, std::ostream& out, std::ostream&) {
  const FaultTree tree = Load(o);
  std::string text;
  for (const Diagnostic& d : tree.diagnostics())
    text += o.input + ": " + Describe(d) + "\n";
  Emit(o, text, out);
}

void AddCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "Tree document (text or JSON)")
      ->required();
  cmd->add_option("-o,--output", o.output, "Write to a file instead of stdout");
}

void AddAnalysis(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--spread", o.spread, "Default spread in percent");
  cmd->add_flag("--custom-spread", o.custom_spread,
                "Allow spreads other than 15, 25 and 50");
  cmd->add_flag("--clamp", o.clamp,
                "Clamp bounds into [0, 1] and saturate rate conversion");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fuzzy quantification of Pandora temporal fault trees", "tft"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Top-event probability at one time");
  AddCommon(analyze, o);
  AddAnalysis(analyze, o);
  analyze->add_option("-t,--time", o.time, "Mission time in hours");

  auto* sweep = app.add_subcommand("sweep", "Top-event probability over times");
  AddCommon(sweep, o);
  AddAnalysis(sweep, o);
  sweep->add_option("--times", o.times, "Comma-separated mission times")
      ->delimiter(',');
  sweep->add_option("--reference", o.reference,
                    "Reference CSV (t,petri_net,bayesian_network,proposed)");
  sweep->add_option("--interpretation", o.interpretation,
                    "Value compared with the reference")
      ->check(CLI::IsMember({"centroid", "peak"}));

  auto* importance =
      app.add_subcommand("importance", "Fuzzy importance ranking of events");
  AddCommon(importance, o);
  AddAnalysis(importance, o);
  importance->add_option("-t,--time", o.time, "Mission time in hours");

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo estimate at peak rates");
  AddCommon(simulate, o);
  simulate->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("-t,--time", o.time, "Mission time in hours");
  simulate->add_option("--samples", o.samples, "Number of samples")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed, "Random seed");

  auto* validate = app.add_subcommand("validate", "Check a tree document");
  AddCommon(validate, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) Analyze(o, out, err);
    if (*sweep) SweepCommand(o, out, err);
    if (*importance) Importance(o, out, err);
    if (*simulate) Simulate(o, out, err);
    if (*validate) ValidateCommand(o, out, err);
  } catch (const Failure& f) {
    err << "tft: " << f.message << "\n";
    return f.code;
  } catch (const IoError& e) {
    err << "tft: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError& e) {
    err << "tft: " << o.input << ": " << e.what() << "\n";
    return kNumeric;
  } catch (const Error& e) {
    err << "tft: " << o.input << ": " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}

}  // namespace tft::cli
