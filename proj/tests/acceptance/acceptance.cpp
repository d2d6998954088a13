// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion and exits
// non-zero if any mandatory check fails.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cli.hpp"
#include "generators.hpp"
#include "tft/analysis.hpp"
#include "tft/gates.hpp"
#include "tft/report.hpp"
#include "tft/simulation.hpp"

namespace {

using namespace tft;
using testing::DataPath;
using testing::Generator;
using testing::RelativeError;

int failures = 0;

void Report(int id, bool pass, const std::string& detail,
            bool mandatory = true) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass && mandatory) ++failures;
}

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const FaultTree& Afds() {
  static const FaultTree tree = LoadTree(DataPath("afds.ft"));
  return tree;
}

// ---------------------------------------------------------------------------

struct ReferenceRate {
  const char* id;
  double rate;
  std::array<double, 3> fuzzy;
};

const std::vector<ReferenceRate> kRates = {
    {"I-SCP", 5.84267E-5, {4.96627E-5, 5.84267E-5, 6.71907E-5}},
    {"I-CSP", 5.84267E-5, {4.96627E-5, 5.84267E-5, 6.71907E-5}},
    {"I-SOV", 1.65633E-3, {1.40788E-3, 1.65633E-3, 1.90478E-3}},
    {"I-SIV", 1.65633E-3, {1.40788E-3, 1.65633E-3, 1.90478E-3}},
    {"I-CSV", 1.65633E-3, {1.40788E-3, 1.65633E-3, 1.90478E-3}},
    {"I-SCV", 1.65633E-3, {1.40788E-3, 1.65633E-3, 1.90478E-3}},
    {"I-CRL", 2.21127E-6, {1.87958E-6, 2.21127E-6, 2.54296E-6}},
    {"I-HiSOF", 4.06861E-5, {3.45832E-5, 4.06861E-5, 4.67889E-5}},
    {"I-HiSIF", 4.06861E-5, {3.45832E-5, 4.06861E-5, 4.67889E-5}},
    {"I-HiSEF", 4.06861E-5, {3.45832E-5, 4.06861E-5, 4.67889E-5}},
    {"I-SIL", 1.65633E-3, {1.40788E-3, 1.65633E-3, 1.90478E-3}},
    {"I-SOL", 3.31774E-5, {2.82008E-5, 3.31774E-5, 3.81541E-5}},
};

// Difference in units of the 6th significant digit after rounding the
// computed value to 6 digits.
double LastDigitUnits(double computed, double reference) {
  const double unit = std::pow(10.0, std::floor(std::log10(reference)) - 5);
  const double rounded = std::round(computed / unit) * unit;
  return std::abs(rounded - reference) / unit;
}

void Criterion1() {
  int exact = 0, total = 0;
  double worst = 0;
  for (const ReferenceRate& r : kRates) {
    const Tfn f = Fuzzify(r.rate, SpreadPercent(15));
    const double got[3] = {f.lower(), f.peak(), f.upper()};
    for (int k = 0; k < 3; ++k) {
      const double units = LastDigitUnits(got[k], r.fuzzy[k]);
      worst = std::max(worst, units);
      exact += units < 0.5;
      ++total;
    }
  }
  // Two reference upper bounds are rounded from already rounded lowers and
  // differ by one unit in the 6th digit.
  Report(1, worst < 1.5,
         Fmt("%d/%d components equal at 6 significant digits, worst %.0f "
             "unit(s) in the last digit",
             exact, total, worst));
}

// ---------------------------------------------------------------------------

void Criterion2() {
  Generator g(2024);
  int within = 0, total = 0;
  for (GateKind kind : {GateKind::kPand, GateKind::kPor}) {
    for (int i = 0; i < 100; ++i) {
      const std::vector<double> rates = g.Rates(g.Int(2, 4));
      const double t = g.Uniform(10, 5000);
      const double exact = kind == GateKind::kPand
                               ? CrispPand(rates, MissionTime(t))
                               : CrispPor(rates, MissionTime(t));
      const SimulationEstimate e = SimulateGate(
          kind, rates,
          {.samples = 1'000'000, .seed = static_cast<std::uint64_t>(total), .t = t});
      const double sigma = std::sqrt(exact * (1 - exact) / e.samples);
      within += std::abs(e.probability - exact) <= 3 * sigma;
      ++total;
    }
  }
  Report(2, within >= 0.99 * total,
         Fmt("%d/%d PAND+POR configurations within 3 standard errors at 1e6 "
             "samples",
             within, total));
}

// ---------------------------------------------------------------------------

void Criterion3() {
  Generator g(3);
  double worst_por = 0, worst_pand = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = g.LogUniform(1e-6, 1e-2), b = g.LogUniform(1e-6, 1e-2);
    const MissionTime t(g.Uniform(10, 5000));
    const std::vector<double> ab = {a, b}, ba = {b, a};
    const std::vector<double> p = {-std::expm1(-a * t.hours()),
                                   -std::expm1(-b * t.hours())};
    worst_por = std::max(
        worst_por, RelativeError(CrispPor(ab, t) + CrispPor(ba, t), CrispOr(p)));
  }
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> rates = g.Rates(g.Int(2, 4));
    const MissionTime t(g.Uniform(10, 5000));
    std::vector<double> p;
    for (double r : rates) p.push_back(-std::expm1(-r * t.hours()));
    std::sort(rates.begin(), rates.end());
    double sum = 0;
    do sum += CrispPand(rates, t);
    while (std::next_permutation(rates.begin(), rates.end()));
    worst_pand = std::max(worst_pand, RelativeError(sum, CrispAnd(p)));
  }
  Report(3, worst_por <= 1e-12 && worst_pand <= 1e-9,
         Fmt("POR partition max rel err %.2e (tol 1e-12); PAND permutation "
             "sum max rel err %.2e (tol 1e-9)",
             worst_por, worst_pand));
}

// ---------------------------------------------------------------------------

void Criterion4() {
  Generator g(4);
  double worst = 0;
  auto check = [&](const Tfn& f, double crisp) {
    for (double v : {f.lower(), f.peak(), f.upper()})
      worst = std::max(worst, RelativeError(v, crisp));
  };
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> rates = g.Rates(g.Int(2, 4));
    const MissionTime t(g.Uniform(10, 5000));
    std::vector<double> p;
    std::vector<Tfn> crisp_rates, crisp_probs;
    for (double r : rates) {
      p.push_back(-std::expm1(-r * t.hours()));
      crisp_rates.push_back(Tfn::Crisp(r));
      crisp_probs.push_back(Tfn::Crisp(p.back()));
    }
    check(FuzzyAnd(crisp_probs), CrispAnd(p));
    check(FuzzyOr(crisp_probs), CrispOr(p));
    check(FuzzyPand(crisp_rates, t), CrispPand(rates, t));
    check(FuzzyPor(crisp_rates, t), CrispPor(rates, t));
  }
  Report(4, worst <= 1e-12,
         Fmt("AND/OR/PAND/POR on 1000 degenerate inputs, max rel err %.2e "
             "(tol 1e-12)",
             worst));
}

// ---------------------------------------------------------------------------

using Big = boost::multiprecision::cpp_bin_float_50;

// Explicit two-input PAND form with index 2 failing first, evaluated in
// 50-digit arithmetic so that its own cancellation does not matter.
double ExplicitPand2(double w1, double w2, double x1, double x2, double t) {
  const Big b1 = x1, b2 = x2, bt = t;
  const Big v = Big(w1) * Big(w2) *
                (1 / (b1 * (b1 + b2)) - exp(-b1 * bt) / (b1 * b2) +
                 exp(-(b1 + b2) * bt) / (b2 * (b1 + b2)));
  return static_cast<double>(v);
}

double PorQuadrature(double w, double r, double k, double s, double t) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double x) {
    return w * std::exp(-r * x) * (1 - k * (1 - std::exp(-s * x)));
  };
  return gauss_kronrod<double, 61>::integrate(f, 0, t, 15, 1e-14);
}

void Criterion5() {
  Generator g(5);
  double worst_pand = 0, worst_por = 0;
  for (int i = 0; i < 1000; ++i) {
    const Tfn r1 = g.FuzzyRate(1e-6, 1e-2, 0.5), r2 = g.FuzzyRate(1e-6, 1e-2, 0.5);
    const double t = g.Uniform(10, 5000);
    const Tfn f = FuzzyPand(std::vector<Tfn>{r2, r1}, MissionTime(t));
    const double lo = ExplicitPand2(r1.lower(), r2.lower(), r1.upper(), r2.upper(), t);
    const double mid = ExplicitPand2(r1.peak(), r2.peak(), r1.peak(), r2.peak(), t);
    const double hi = ExplicitPand2(r1.upper(), r2.upper(), r1.lower(), r2.lower(), t);
    worst_pand = std::max({worst_pand, RelativeError(f.lower(), lo),
                           RelativeError(f.peak(), mid),
                           RelativeError(f.upper(), hi)});
  }
  for (int i = 0; i < 1000; ++i) {
    const Tfn e1 = g.FuzzyRate(1e-6, 1e-2, 0.5), e2 = g.FuzzyRate(1e-6, 1e-2, 0.5);
    const double t = g.Uniform(10, 5000);
    const Tfn f = FuzzyPor(std::vector<Tfn>{e1, e2}, MissionTime(t));
    const double lo = PorQuadrature(e1.lower(), e1.upper(),
                                    e2.upper() / e2.lower(), e2.lower(), t);
    const double hi = PorQuadrature(e1.upper(), e1.lower(),
                                    e2.lower() / e2.upper(), e2.upper(), t);
    worst_por = std::max(
        {worst_por, RelativeError(f.lower(), lo), RelativeError(f.upper(), hi)});
  }
  Report(5, worst_pand <= 1e-12 && worst_por <= 1e-8,
         Fmt("PAND n=2 vs explicit form max rel err %.2e (tol 1e-12); POR "
             "n=2 vs quadrature max rel err %.2e (tol 1e-8)",
             worst_pand, worst_por));
}

// ---------------------------------------------------------------------------

const std::vector<std::pair<double, double>> kTable3 = {
    {100, 0.05269844},  {500, 0.56162025},  {1000, 0.85253225},
    {1500, 0.94286331}, {2000, 0.97599884}, {2500, 0.98951921},
    {3000, 0.99532702},
};

bool Close(const Tfn& a, const Tfn& b) {
  return RelativeError(a.lower(), b.lower()) < 1e-12 &&
         RelativeError(a.peak(), b.peak()) < 1e-12 &&
         RelativeError(a.upper(), b.upper()) < 1e-12;
}

// Monotone growth plus O-SOS and IE6 against hand computation.
bool SweepFallback(const AnalysisReport& r) {
  bool ok = true;
  for (size_t i = 1; i < r.entries.size(); ++i)
    ok &= r.entries[i].defuzzified > r.entries[i - 1].defuzzified;

  const SpreadPercent s(15);
  for (double hours : {100.0, 1000.0, 3000.0}) {
    const MissionTime t(hours);
    const Tfn sos = FuzzyOr(std::vector<Tfn>{
        RateToProbability(Fuzzify(1.65633E-3, s), t),
        RateToProbability(Fuzzify(3.31774E-5, s), t)});
    const Tfn ie6 = FuzzyPand(
        std::vector<Tfn>{Fuzzify(4.06861E-5, s), ProbabilityToRate(sos, t)}, t);
    for (const char* top : {"O-SOS", "IE6"}) {
      TreeDocument doc = Afds().document();
      doc.top = top;
      std::erase_if(doc.gates, [&](const Gate& g) {
        return g.id != "O-SOS" && (std::string(top) == "O-SOS" || g.id != "IE6");
      });
      std::erase_if(doc.events, [&](const BasicEvent& e) {
        return e.id != "I-SOV" && e.id != "I-SOL" &&
               (std::string(top) == "O-SOS" || e.id != "I-HiSOF");
      });
      const Tfn got =
          Evaluate(FaultTree::Build(doc), t, AnalysisConfig::FromTree(Afds()));
      ok &= Close(got, std::string(top) == "O-SOS" ? sos : ie6);
    }
  }
  return ok;
}

void Criterion6() {
  const AnalysisReport r = Sweep(Afds(), AnalysisConfig::FromTree(Afds()));
  double err_centroid = 0, err_peak = 0;
  for (size_t i = 0; i < kTable3.size(); ++i) {
    err_centroid = std::max(err_centroid,
                            std::abs(r.entries[i].defuzzified - kTable3[i].second));
    err_peak = std::max(err_peak, std::abs(r.entries[i].peak - kTable3[i].second));
  }
  const bool table = std::min(err_centroid, err_peak) <= 5e-3;
  const char* how = err_centroid <= err_peak ? "centroid" : "peak";
  // The passing interpretation must be recorded in the fixture.
  const bool recorded =
      ReadFile(DataPath("afds.ft")).find(std::string("interpretation: ") + how) !=
      std::string::npos;
  const bool fallback = SweepFallback(r);
  Report(6, table && recorded && fallback,
         Fmt("max |error| vs reference sweep: centroid %.5f, peak %.5f (tol "
             "5e-3); passing interpretation %s%s; fallback (monotone, O-SOS, "
             "IE6) %s",
             err_centroid, err_peak, how,
             recorded ? " (recorded in fixture)" : " (NOT recorded in fixture)",
             fallback ? "holds" : "FAILS"));
}

// ---------------------------------------------------------------------------

const std::map<std::string, double> kTable4 = {
    {"I-CSV", 1.2744},   {"I-SOV", 0.9774},   {"I-SOL", 0.6008},
    {"I-CSP", 0.5723},   {"I-CRL", 0.5566},   {"I-SCV", 0.4131},
    {"I-SCP", 0.1943},   {"I-SIV", 0.0734},   {"I-SIL", 0.0734},
    {"I-HiSIF", 0.0535}, {"I-HiSEF", 0.0022}, {"I-HiSOF", 0.0003},
};

double TableError(const std::vector<ImportanceRow>& rows) {
  double worst = 0;
  for (const ImportanceRow& r : rows)
    worst = std::max(worst, std::abs(r.fim - kTable4.at(r.event_id)));
  return worst;
}

void Criterion7() {
  const AnalysisConfig c = AnalysisConfig::FromTree(Afds());
  // Locate the mission time that fits the reference table best.
  double best_t = 0, best_err = INFINITY;
  for (double t = 10; t <= 3000; t += 10) {
    const double err = TableError(ImportanceTable(Afds(), MissionTime(t), c));
    if (err < best_err) best_err = err, best_t = t;
  }
  const auto at_best = ImportanceTable(Afds(), MissionTime(best_t), c);
  const bool order = at_best.front().event_id == "I-CSV" &&
                     at_best.back().event_id == "I-HiSOF";
  const bool table = best_err <= 5e-3 && order;

  const double t0 = c.importance_time.value_or(500);
  const auto rows = ImportanceTable(Afds(), MissionTime(t0), c);
  double siv = -1, sil = -2;
  int siv_rank = -1, sil_rank = -2;
  bool nonnegative = true;
  for (const ImportanceRow& r : rows) {
    nonnegative &= r.fim >= 0;
    if (r.event_id == "I-SIV") siv = r.fim, siv_rank = r.rank;
    if (r.event_id == "I-SIL") sil = r.fim, sil_rank = r.rank;
  }
  const bool fallback = nonnegative && std::abs(siv - sil) <= kRankTieTolerance &&
                        siv_rank == sil_rank;

  // The full-table match is best effort; the fallback is mandatory.
  Report(7, table,
         Fmt("[best effort] reference importance table: best max |error| "
             "%.4f at t=%.0f (tol 5e-3), first %s, last %s",
             best_err, best_t, at_best.front().event_id.c_str(),
             at_best.back().event_id.c_str()),
         /*mandatory=*/false);
  Report(7, fallback,
         Fmt("[fallback] at t=%.0f: I-SIV/I-SIL FIM %.6f/%.6f share rank %d; "
             "all FIM >= 0: %s",
             t0, siv, sil, siv_rank, nonnegative ? "yes" : "no"));
}

// ---------------------------------------------------------------------------

struct CliResult {
  int code;
  std::string out;
};

CliResult RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str() + "\n--stderr--\n" + err.str()};
}

void Criterion8() {
  const auto reference = ParseReferenceCsv(ReadFile(DataPath("afds_sweep.csv")));
  bool proposed_equal = reference.size() == kTable3.size();
  for (size_t i = 0; proposed_equal && i < reference.size(); ++i)
    proposed_equal = reference[i].t == kTable3[i].first &&
                     reference[i].proposed == kTable3[i].second;

  std::ostringstream out, err;
  const int code = cli::Run({"sweep", DataPath("afds.ft"), "--reference",
                             DataPath("afds_sweep.csv")},
                            out, err);
  // Column 4 of the comparison CSV is delta_petri_net.
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  double worst = 0;
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
    worst = std::max(worst, std::abs(std::stod(cells.at(3))));
    ++rows;
  }
  Report(8, code == 0 && proposed_equal && rows == 7 && worst <= 0.023,
         Fmt("reference 'proposed' column equals reference sweep: %s; sweep "
             "--reference max |delta vs Petri net| %.5f over %d rows (bound "
             "0.023)",
             proposed_equal ? "yes" : "no", worst, rows));
}

// ---------------------------------------------------------------------------

void Criterion9() {
  const std::string afds = DataPath("afds.ft");
  const std::vector<std::vector<std::string>> commands = {
      {"analyze", afds},
      {"analyze", afds, "--format", "json"},
      {"sweep", afds},
      {"sweep", afds, "--format", "json"},
      {"sweep", afds, "--reference", DataPath("afds_sweep.csv")},
      {"importance", afds},
      {"importance", afds, "--format", "json"},
      {"simulate", afds, "--seed", "42"},
      {"simulate", afds, "--seed", "42", "--format", "json"},
      {"validate", afds},
  };
  int identical = 0;
  std::string bad;
  for (const auto& args : commands) {
    const CliResult a = RunCli(args), b = RunCli(args);
    if (a.code == 0 && a.out == b.out) {
      ++identical;
    } else {
      bad += " " + args[0];
    }
  }
  Report(9, identical == static_cast<int>(commands.size()),
         Fmt("%d/%zu subcommand invocations byte-identical across two runs%s",
             identical, commands.size(), bad.c_str()));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      Criterion1, Criterion2, Criterion3, Criterion4, Criterion5,
      Criterion6, Criterion7, Criterion8, Criterion9};
  for (size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      Report(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
    }
  }
  std::printf("%s\n", failures == 0 ? "all mandatory checks passed"
                                    : "mandatory checks failed");
  return failures == 0 ? 0 : 1;
}
