#include "l1lab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "l1lab/arcs.hpp"
#include "l1lab/arith.hpp"
#include "l1lab/decomp.hpp"
#include "l1lab/expsum.hpp"
#include "l1lab/fnspec.hpp"
#include "l1lab/parallel.hpp"
#include "l1lab/pretentious.hpp"

namespace l1lab {

namespace {

constexpr uint64_t kMaxGridSize = uint64_t(1) << 26;  // 1 GiB of complex doubles

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Cell {
  std::string key;
  std::string text;
  bool quoted = false;
};

struct Row {
  std::vector<Cell> cells;

  Row& num(const std::string& key, double v) {
    cells.push_back({key, fmt_double(v), false});
    return *this;
  }
  Row& num(const std::string& key, uint64_t v) {
    cells.push_back({key, std::to_string(v), false});
    return *this;
  }
  Row& boolean(const std::string& key, bool v) {
    cells.push_back({key, v ? "true" : "false", false});
    return *this;
  }
  Row& str(const std::string& key, const std::string& v) {
    cells.push_back({key, v, true});
    return *this;
  }
};

std::string format_name(ReportFormat f) { return f == ReportFormat::csv ? "csv" : "jsonl"; }

std::string config_line(const ExperimentConfig& c) {
  std::string s;
  s += "command=" + c.command;
  s += " f=" + c.fn_spec;
  s += " N=" + std::to_string(c.n);
  s += " Q=" + std::to_string(c.q);
  s += " T=" + fmt_double(c.t_max);
  s += " delta=" + fmt_double(c.delta);
  s += " eps=" + fmt_double(c.eps);
  s += " A=" + fmt_double(c.a_param);
  s += " oversample=" + std::to_string(c.oversample);
  s += " seed=" + std::to_string(c.seed);
  s += " format=" + format_name(c.format);
  return s;
}

class ReportWriter {
 public:
  ReportWriter(const ExperimentConfig& config) : config_(config) {
    out_.open(config.out_path);
    if (!out_) throw DomainError("cannot open output path " + config.out_path);
    if (config.format == ReportFormat::csv) {
      out_ << "# l1lab " << kToolVersion << "\n";
      out_ << "# config " << config_line(config) << "\n";
    } else {
      out_ << "{\"tool\":\"l1lab\",\"version\":\"" << kToolVersion << "\",\"config\":\""
           << config_line(config) << "\"}\n";
    }
  }

  void row(const Row& r) {
    if (config_.format == ReportFormat::csv) {
      if (!header_done_) {
        for (size_t i = 0; i < r.cells.size(); ++i)
          out_ << (i ? "," : "") << r.cells[i].key;
        out_ << "\n";
        header_done_ = true;
      }
      for (size_t i = 0; i < r.cells.size(); ++i)
        out_ << (i ? "," : "") << r.cells[i].text;
      out_ << "\n";
    } else {
      out_ << "{";
      for (size_t i = 0; i < r.cells.size(); ++i) {
        if (i) out_ << ",";
        out_ << "\"" << r.cells[i].key << "\":";
        if (r.cells[i].quoted)
          out_ << "\"" << r.cells[i].text << "\"";
        else
          out_ << r.cells[i].text;
      }
      out_ << "}\n";
    }
  }

  // wall-clock footer, marked volatile so report bodies stay byte-identical
  void finish(double wall_seconds) {
    if (config_.format == ReportFormat::csv)
      out_ << "#! wall_clock_seconds=" << fmt_double(wall_seconds) << "\n";
    else
      out_ << "{\"volatile\":{\"wall_clock_seconds\":" << fmt_double(wall_seconds) << "}}\n";
  }

 private:
  ExperimentConfig config_;
  std::ofstream out_;
  bool header_done_ = false;
};

std::vector<uint64_t> dyadic_sweep(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> xs;
  for (uint64_t v = lo; v <= hi; v <<= 1) xs.push_back(v);
  if (xs.empty() || xs.back() != hi) xs.push_back(hi);
  return xs;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

void cmd_l1norm(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  MultFnSpec f = parse_fn_spec(c.fn_spec, sieve, c.n);
  Window window = c.eps > 0.0 ? Window(c.eps, WindowKind::plateau) : Window::zero();
  const Window* wp = c.eps > 0.0 ? &window : nullptr;

  std::vector<uint64_t> ns = dyadic_sweep(std::min<uint64_t>(c.n, 256), c.n);
  struct Point {
    uint64_t n, m;
    NormEstimate l1, l2;
  };
  std::vector<Point> pts(ns.size());
  parallel_for(ns.size(), [&](size_t i) {
    CoefficientVector a = coefficient_vector(f, sieve, ns[i], wp);
    ExpSumGrid grid = grid_transform(a, default_grid_size(ns[i], c.oversample));
    pts[i] = {ns[i], grid.m, lp_norm(grid, 1.0), lp_norm(grid, 2.0)};
  });
  for (const Point& p : pts) {
    for (double pe : {1.0, 2.0}) {
      const NormEstimate& e = pe == 1.0 ? p.l1 : p.l2;
      Row r;
      r.num("N", p.n).num("M", p.m).num("p", pe).num("value", e.value).num("error_bound",
                                                                           e.error_bound);
      w.row(r);
    }
  }
}

void cmd_arcs_energy(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  MultFnSpec f = parse_fn_spec(c.fn_spec, sieve, c.n);
  Window window = c.eps > 0.0 ? Window(c.eps, WindowKind::plateau) : Window::zero();
  const Window* wp = c.eps > 0.0 ? &window : nullptr;
  CoefficientVector a = coefficient_vector(f, sieve, c.n, wp);
  ExpSumGrid grid = grid_transform(a, default_grid_size(c.n, c.oversample));
  const double total = grid.l2_sq();

  for (uint64_t q : dyadic_sweep(2, c.q)) {
    ArcSet arcs = major_arcs(q, c.n);
    EnergySplit split = energy_split(grid, arcs);
    Row r;
    r.num("Q", q)
        .num("measure", arcs.total_measure())
        .boolean("saturated", arcs.saturated())
        .num("major_energy", split.major_energy)
        .num("minor_energy", split.minor_energy)
        .num("major_fraction", total > 0 ? split.major_energy / total : 0.0)
        .num("quad_error", split.quad_error);
    w.row(r);
  }
}

void cmd_detect(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  MultFnSpec f = parse_fn_spec(c.fn_spec, sieve, c.n);
  PrimeInterval interval{std::max(2.0, double(c.q)), double(c.n)};
  PretentiousReport rep = c.t_max > 0.0
                              ? best_character(f, c.q, c.t_max, interval, sieve)
                              : quadratic_scan(f, c.q, interval, sieve);
  uint64_t rank = 0;
  auto emit = [&](const ScanEntry& e) {
    Row r;
    r.num("rank", rank++)
        .str("character", e.psi.label())
        .num("conductor", e.psi.conductor())
        .num("t", e.t)
        .num("dist_sq", e.dist_sq);
    w.row(r);
  };
  emit(rep.best);
  for (const ScanEntry& e : rep.runners_up) emit(e);
}

void cmd_tk_check(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  TKCheck chk = tk_check({2.0, double(c.q)}, c.n, sieve);
  Row r;
  r.num("I_lo", uint64_t(2))
      .num("I_hi", c.q)
      .num("N", c.n)
      .num("lhs", chk.lhs)
      .num("rhs", chk.rhs)
      .num("ratio", chk.ratio);
  w.row(r);
}

void cmd_presieve_gap(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  MultFnSpec f = parse_fn_spec(c.fn_spec, sieve, c.n);
  PresievePair pair = presieve(f, c.a_param, sieve);
  auto lower = eval_mult_fn_range(pair.completely, sieve, c.n);
  auto trunc = eval_mult_fn_range(pair.truncated, sieve, c.n);
  double gap = 0.0;
  for (uint64_t m = 1; m <= c.n; ++m) gap += std::norm(trunc[m] - lower[m]);
  Row r;
  r.num("A", c.a_param)
      .num("N", c.n)
      .num("gap_l2sq", gap)
      .num("normalized_c", gap * c.a_param / double(c.n));
  w.row(r);
}

void cmd_criterion(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  MultFnSpec f = parse_fn_spec(c.fn_spec, sieve, c.n);
  const double eps = c.eps > 0.0 ? c.eps : 0.125;
  Window window(eps, WindowKind::plateau);

  PrimeInterval interval{double(c.q), std::max(double(c.q) * 2.0, std::sqrt(double(c.n)))};
  TKWeights tk(interval, sieve);
  CoefficientVector base = coefficient_vector(f, sieve, c.n, &window);
  CoefficientVector a1(c.n), a2(c.n);
  for (uint64_t m = 1; m <= c.n; ++m) {
    const double c1 = tk.c1(m);
    a1.a[m] = base.a[m] * c1;
    a2.a[m] = base.a[m] * (1.0 - c1);
  }
  const uint64_t grid_m = default_grid_size(c.n, c.oversample);
  ExpSumGrid s1 = grid_transform(a1, grid_m);
  ExpSumGrid s2 = grid_transform(a2, grid_m);
  ExpSumGrid s3 = grid_transform(CoefficientVector(c.n), grid_m);
  ArcSet arcs = major_arcs(c.q, c.n);

  double delta = c.delta;
  if (delta <= 0.0) {
    // largest Delta that keeps the minor-arc hypothesis true, with margin 2
    ExpSumGrid total;
    total.n = c.n;
    total.m = grid_m;
    total.l1_coeff_sum = base.l1();
    total.values.resize(grid_m);
    for (uint64_t j = 0; j < grid_m; ++j) total.values[j] = s1.values[j] + s2.values[j];
    const double sup = minor_sup(s1, arcs).value + s1.derivative_bound() / double(grid_m);
    delta = std::sqrt(double(c.n)) * std::sqrt(total.l2_sq()) / (2.0 * std::max(sup, 1e-300));
  }

  CriterionInput input{&s1, &s2, &s3, &arcs, delta};
  CriterionReport rep = criterion_certificate(input);
  Row r;
  r.num("delta_param", delta)
      .boolean("degenerate", rep.degenerate)
      .num("s_l2", rep.s_l2)
      .num("delta1", rep.delta1)
      .num("delta2", rep.delta2)
      .num("delta3", rep.delta3)
      .num("minor_sup_s1", rep.minor_sup_s1)
      .num("minor_threshold", rep.minor_threshold)
      .boolean("minor_hypothesis", rep.minor_hypothesis)
      .boolean("applicable", rep.applicable)
      .num("k_param", rep.k_param)
      .num("implied_l1_lower", rep.implied_l1_lower)
      .num("measured_l1", rep.measured_l1)
      .num("measured_l1_error", rep.measured_l1_error);
  w.row(r);
}

void cmd_multiscale(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  MultFnSpec f = parse_fn_spec(c.fn_spec, sieve, c.n);
  MultiscaleReport rep =
      multiscale_consistency(f, c.eps, c.n, sieve, c.q > 0 ? c.q : 30);
  for (const MultiscaleScan& s : rep.scans) {
    Row r;
    r.str("ladder", std::string(1, s.ladder))
        .num("lo", s.interval.lo)
        .num("hi", s.interval.hi)
        .str("winner", s.winner)
        .num("dist_sq", s.dist_sq)
        .boolean("consistent", rep.consistent);
    w.row(r);
  }
}

void cmd_minor_sup(const ExperimentConfig& c, ReportWriter& w) {
  FactorSieve sieve(c.n);
  MultFnSpec f = parse_fn_spec(c.fn_spec, sieve, c.n);
  Window window = c.eps > 0.0 ? Window(c.eps, WindowKind::plateau) : Window::zero();
  const Window* wp = c.eps > 0.0 ? &window : nullptr;
  CoefficientVector base = coefficient_vector(f, sieve, c.n, wp);

  for (uint64_t q : dyadic_sweep(16, c.q)) {
    PrimeInterval interval{double(q), std::min(double(16 * q), double(c.n))};
    TKWeights tk(interval, sieve);
    CoefficientVector a1(c.n);
    for (uint64_t m = 1; m <= c.n; ++m) a1.a[m] = base.a[m] * tk.c1(m);
    ExpSumGrid s1 = grid_transform(a1, default_grid_size(c.n, c.oversample));
    ArcSet arcs = major_arcs(q, c.n);
    SupResult sup = minor_sup(s1, arcs);
    Row r;
    r.num("Q", q)
        .num("sup", sup.value)
        .num("scaled", sup.value * std::sqrt(double(q)) / double(c.n))
        .num("argmax_alpha", sup.alpha);
    w.row(r);
  }
}

}  // namespace

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "jsonl") return ReportFormat::jsonl;
  throw DomainError("unknown format '" + s + "' (expected csv or jsonl)");
}

void validate_config(const ExperimentConfig& c) {
  static const char* commands[] = {"l1norm",       "arcs-energy", "detect",
                                   "tk-check",     "presieve-gap", "criterion",
                                   "multiscale",   "minor-sup"};
  bool known = false;
  for (const char* cmd : commands) known = known || c.command == cmd;
  if (!known) throw DomainError("unknown subcommand '" + c.command + "'");
  if (c.out_path.empty()) throw DomainError("--out is required");

  parse_fn_spec_ast(c.fn_spec);  // syntax check before any allocation

  if (c.n < 2) throw DomainError("--N must be >= 2");
  if (c.n > FactorSieve::kMaxLimit)
    throw ResourceError("--N " + std::to_string(c.n) + " exceeds the sieve budget " +
                        std::to_string(FactorSieve::kMaxLimit));
  if (c.oversample < 8) throw DomainError("--oversample must be >= 8 (the 8N floor)");
  if (c.oversample > 1024) throw DomainError("--oversample must be <= 1024");

  const bool needs_grid = c.command == "l1norm" || c.command == "arcs-energy" ||
                          c.command == "criterion" || c.command == "minor-sup";
  if (needs_grid && default_grid_size(c.n, c.oversample) > kMaxGridSize)
    throw ResourceError("grid of " + std::to_string(default_grid_size(c.n, c.oversample)) +
                        " points exceeds the memory budget (" +
                        std::to_string(kMaxGridSize) + ")");

  if (c.eps != 0.0 && !(c.eps > 0.0 && c.eps < 0.5) && c.command != "multiscale")
    throw DomainError("--eps must lie in (0, 1/2)");

  if (c.command == "detect") {
    if (c.q < 1 || c.q > kCharacterModulusCap)
      throw DomainError("--Q must lie in [1, " + std::to_string(kCharacterModulusCap) + "]");
  }
  if (c.command == "arcs-energy" || c.command == "minor-sup" || c.command == "criterion") {
    if (c.q < 2) throw DomainError("--Q must be >= 2");
    if (c.q * c.q > c.n)
      throw DomainError("--Q must be at most sqrt(N) for resolvable arcs");
  }
  if (c.command == "tk-check" && c.q < 2)
    throw DomainError("--Q (the interval top) must be >= 2");
  if (c.command == "presieve-gap" && c.a_param < 2.0)
    throw DomainError("--A must be >= 2");
  if (c.command == "multiscale") {
    if (!(c.eps > 0.0 && c.eps < 1.0)) throw DomainError("--eps must lie in (0, 1)");
    if (c.n < 100) throw DomainError("--N too small for a scale ladder");
  }
  if (c.delta < 0.0) throw DomainError("--delta must be >= 0");
}

void run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  ReportWriter writer(config);

  if (config.command == "l1norm") cmd_l1norm(config, writer);
  else if (config.command == "arcs-energy") cmd_arcs_energy(config, writer);
  else if (config.command == "detect") cmd_detect(config, writer);
  else if (config.command == "tk-check") cmd_tk_check(config, writer);
  else if (config.command == "presieve-gap") cmd_presieve_gap(config, writer);
  else if (config.command == "criterion") cmd_criterion(config, writer);
  else if (config.command == "multiscale") cmd_multiscale(config, writer);
  else if (config.command == "minor-sup") cmd_minor_sup(config, writer);

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  writer.finish(elapsed.count());
}

int run_experiment_cli(const ExperimentConfig& config) {
  try {
    run_experiment(config);
    return 0;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return 3;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
}

}  // namespace l1lab
