#include "l1lab/pretentious.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace l1lab {

namespace {

void check_interval(PrimeInterval interval, const FactorSieve& sieve) {
  if (interval.hi < interval.lo) throw DomainError("prime interval has hi < lo");
  if (interval.hi > double(sieve.limit()))
    throw DomainError("prime interval exceeds the sieve limit");
}

}  // namespace

double distance_sq(const MultFnSpec& f, const MultFnSpec& g, PrimeInterval interval,
                   const FactorSieve& sieve) {
  check_interval(interval, sieve);
  double s = 0.0;
  for (uint32_t p : sieve.primes_in(interval.lo, interval.hi)) {
    const cplx prod = f.on_prime(p) * std::conj(g.on_prime(p));
    s += (1.0 - prod.real()) / double(p);
  }
  return s;
}

double distance_sq(const MultFnSpec& f, const DirichletCharacter& psi, double t,
                   PrimeInterval interval, const FactorSieve& sieve) {
  check_interval(interval, sieve);
  double s = 0.0;
  for (uint32_t p : sieve.primes_in(interval.lo, interval.hi)) {
    const cplx w = f.on_prime(p) * std::conj(psi(p));
    // Re(w p^{-it}) = Re w cos(t log p) + Im w sin(t log p)
    const double th = t * std::log(double(p));
    s += (1.0 - (w.real() * std::cos(th) + w.imag() * std::sin(th))) / double(p);
  }
  return s;
}

double twist_lipschitz(PrimeInterval interval, const FactorSieve& sieve) {
  check_interval(interval, sieve);
  double s = 0.0;
  for (uint32_t p : sieve.primes_in(interval.lo, interval.hi))
    s += std::log(double(p)) / double(p);
  return s;
}

TwistFit min_over_t(const MultFnSpec& f, const DirichletCharacter& psi, double t_max,
                    PrimeInterval interval, const FactorSieve& sieve, double t_spacing) {
  if (t_max < 0.0) throw DomainError("min_over_t: T must be >= 0");
  check_interval(interval, sieve);

  // hoist the prime data so each t evaluation is a fused pass
  auto ps = sieve.primes_in(interval.lo, interval.hi);
  std::vector<double> wr(ps.size()), wi(ps.size()), lg(ps.size());
  double harmonic = 0.0;
  for (size_t i = 0; i < ps.size(); ++i) {
    const double p = double(ps[i]);
    const cplx w = f.on_prime(ps[i]) * std::conj(psi(ps[i]));
    wr[i] = w.real() / p;
    wi[i] = w.imag() / p;
    lg[i] = std::log(p);
    harmonic += 1.0 / p;
  }
  auto eval = [&](double t) {
    double acc = 0.0;
    for (size_t i = 0; i < ps.size(); ++i)
      acc += wr[i] * std::cos(t * lg[i]) + wi[i] * std::sin(t * lg[i]);
    return harmonic - acc;
  };

  if (t_spacing <= 0.0)
    t_spacing = std::numbers::pi / std::log(std::max(interval.hi, 3.0));

  // grid points j * spacing in [-T, T], visited outward from 0 so ties
  // resolve to the smallest |t| (positive side first)
  TwistFit best{0.0, eval(0.0)};
  const int64_t steps = int64_t(std::floor(t_max / t_spacing));
  for (int64_t j = 1; j <= steps; ++j) {
    for (int sign : {+1, -1}) {
      const double t = double(sign) * double(j) * t_spacing;
      const double d = eval(t);
      if (d < best.dist_sq) best = {t, d};
    }
  }

  if (t_max > 0.0) {
    // one golden-section refinement around the best grid point
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(-t_max, best.t - t_spacing);
    double hi = std::min(t_max, best.t + t_spacing);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = eval(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = eval(x2);
      }
    }
    const double tm = 0.5 * (lo + hi);
    const double fm = eval(tm);
    if (fm < best.dist_sq) best = {tm, fm};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

namespace {

bool entry_less(const ScanEntry& a, const ScanEntry& b) {
  if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
  if (a.psi.conductor() != b.psi.conductor()) return a.psi.conductor() < b.psi.conductor();
  if (std::abs(a.t) != std::abs(b.t)) return std::abs(a.t) < std::abs(b.t);
  return a.psi.label() < b.psi.label();
}

PretentiousReport assemble_report(std::vector<ScanEntry> entries, ScanDomain domain,
                                  double spacing) {
  if (entries.empty()) throw DomainError("scan produced no candidates");
  std::sort(entries.begin(), entries.end(), entry_less);
  return PretentiousReport{entries.front(),
                           {entries.begin() + 1, entries.end()},
                           domain,
                           spacing};
}

}  // namespace

PretentiousReport best_character(const MultFnSpec& f, uint64_t q_max, double t_max,
                                 PrimeInterval interval, const FactorSieve& sieve) {
  if (q_max < 1) throw DomainError("best_character: Q must be >= 1");
  if (q_max > kCharacterModulusCap)
    throw ResourceError("best_character: Q exceeds the character-modulus cap");

  const double spacing = std::numbers::pi / std::log(std::max(interval.hi, 3.0));
  std::vector<ScanEntry> entries;
  for (uint64_t q = 1; q <= q_max; ++q) {
    for (DirichletCharacter& chi : characters_mod(q)) {
      if (!chi.is_primitive()) continue;
      TwistFit fit = min_over_t(f, chi, t_max, interval, sieve, spacing);
      entries.push_back({std::move(chi), fit.t, fit.dist_sq});
    }
  }
  return assemble_report(std::move(entries), {q_max, t_max, interval}, spacing);
}

std::vector<int64_t> fundamental_discriminants(uint64_t bound, bool include_one) {
  std::vector<int64_t> ds;
  for (uint64_t ad = 1; ad <= bound; ++ad) {
    for (int s : {+1, -1}) {
      const int64_t d = s * int64_t(ad);
      if (d == 1 && !include_one) continue;
      if (d == -1) continue;  // -1 is not a discriminant
      if (is_fundamental_discriminant(d)) ds.push_back(d);
    }
  }
  return ds;
}

PretentiousReport quadratic_scan(const MultFnSpec& f, uint64_t q_max,
                                 PrimeInterval interval, const FactorSieve& sieve,
                                 bool include_principal) {
  if (q_max < 1) throw DomainError("quadratic_scan: Q must be >= 1");
  if (q_max > kCharacterModulusCap)
    throw ResourceError("quadratic_scan: Q exceeds the character-modulus cap");

  std::vector<ScanEntry> entries;
  for (int64_t d : fundamental_discriminants(q_max, include_principal)) {
    DirichletCharacter chi = kronecker_character(d);
    const double dist = distance_sq(f, chi, 0.0, interval, sieve);
    entries.push_back({std::move(chi), 0.0, dist});
  }
  if (entries.empty())
    throw DomainError("quadratic_scan: no fundamental discriminants below the bound");
  return assemble_report(std::move(entries), {q_max, 0.0, interval}, 0.0);
}

double majorant_h(double x) {
  const double y = x * x - 1.0;
  return 1.0 + y / 2.0 - y * y / 18.0;
}

// ---------------------------------------------------------------------------
// Multi-scale consistency
// ---------------------------------------------------------------------------

MultiscaleReport multiscale_consistency(const MultFnSpec& f, double eps, uint64_t n_max,
                                        const FactorSieve& sieve, uint64_t scan_q) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("multiscale: eps must lie in (0, 1)");
  if (n_max > sieve.limit()) throw DomainError("multiscale: N_max exceeds the sieve limit");
  const double scale_floor = 100.0;  // keep some primes in every interval

  // descending ladder N_k = n_max, N_{i-1} = N_i^{eps^2}
  std::vector<double> ladder{double(n_max)};
  while (true) {
    const double next = std::pow(ladder.back(), eps * eps);
    if (next < scale_floor) break;
    ladder.push_back(next);
  }
  std::reverse(ladder.begin(), ladder.end());

  MultiscaleReport rep;
  auto scan_one = [&](char kind, double lo, double hi) {
    PrimeInterval interval{lo, hi};
    PretentiousReport sub = quadratic_scan(f, scan_q, interval, sieve, false);
    rep.scans.push_back({kind, interval, sub.best.psi.label(), sub.best.dist_sq});
  };

  for (size_t i = 1; i < ladder.size(); ++i) scan_one('N', ladder[i - 1], ladder[i]);
  for (size_t i = 0; i < ladder.size(); ++i) {
    const double ni = ladder[i];
    const double lo = std::pow(ni, eps);
    const double hi = std::min(std::pow(ni, 1.0 / eps), double(n_max));
    if (hi > lo * 1.5 && lo >= 2.0) scan_one('M', lo, hi);
  }

  if (rep.scans.size() < 2)
    throw DomainError("multiscale: fewer than 2 scales representable at this eps/N_max");

  rep.consistent = true;
  for (const MultiscaleScan& s : rep.scans)
    if (s.winner != rep.scans.front().winner) rep.consistent = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Structured-text serialization
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string PretentiousReport::to_text() const {
  std::string out = "l1lab-report v1 pretentious\n";
  out += "scan_q " + std::to_string(domain.q_max) + "\n";
  out += "scan_t " + fmt(domain.t_max) + "\n";
  out += "interval " + fmt(domain.interval.lo) + " " + fmt(domain.interval.hi) + "\n";
  out += "t_grid_spacing " + fmt(t_grid_spacing) + "\n";
  auto line = [&](const char* tag, const ScanEntry& e) {
    out += std::string(tag) + " " + e.psi.label() + " conductor " +
           std::to_string(e.psi.conductor()) + " t " + fmt(e.t) + " dist_sq " +
           fmt(e.dist_sq) + "\n";
  };
  line("best", best);
  for (const ScanEntry& e : runners_up) line("runner_up", e);
  return out;
}

std::string MultiscaleReport::to_text() const {
  std::string out = "l1lab-report v1 multiscale\n";
  out += std::string("verdict ") + (consistent ? "consistent" : "inconsistent") + "\n";
  for (const MultiscaleScan& s : scans) {
    out += std::string(1, s.ladder) + "-scale " + fmt(s.interval.lo) + " " +
           fmt(s.interval.hi) + " winner " + s.winner + " dist_sq " + fmt(s.dist_sq) + "\n";
  }
  return out;
}

}  // namespace l1lab
