#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "l1lab/arith.hpp"
#include "l1lab/common.hpp"

namespace l1lab {

// closed prime interval [lo, hi]
struct PrimeInterval {
  double lo = 2.0;
  double hi = 2.0;
};

// D(f, g; I)^2 = sum_{p in I} (1 - Re f(p) conj(g(p))) / p
double distance_sq(const MultFnSpec& f, const MultFnSpec& g, PrimeInterval interval,
                   const FactorSieve& sieve);

// g(n) = psi(n) n^{it}
double distance_sq(const MultFnSpec& f, const DirichletCharacter& psi, double t,
                   PrimeInterval interval, const FactorSieve& sieve);

// Lipschitz constant of t -> D(f, psi n^{it}; I)^2: sum_{p in I} log p / p
double twist_lipschitz(PrimeInterval interval, const FactorSieve& sieve);

struct TwistFit {
  double t = 0.0;
  double dist_sq = 0.0;
};

// grid minimization over t in [-T, T] followed by one golden-section
// refinement around the best grid point; spacing <= 0 picks the default
// pi / log(hi)
TwistFit min_over_t(const MultFnSpec& f, const DirichletCharacter& psi, double t_max,
                    PrimeInterval interval, const FactorSieve& sieve,
                    double t_spacing = 0.0);

struct ScanEntry {
  DirichletCharacter psi;
  double t = 0.0;
  double dist_sq = 0.0;
};

struct ScanDomain {
  uint64_t q_max = 0;
  double t_max = 0.0;
  PrimeInterval interval;
};

struct PretentiousReport {
  ScanEntry best;
  std::vector<ScanEntry> runners_up;  // ranked, ascending distance
  ScanDomain domain;
  double t_grid_spacing = 0.0;

  // versioned structured-text document
  std::string to_text() const;
};

// minimize over all primitive characters of conductor <= Q and |t| <= T
PretentiousReport best_character(const MultFnSpec& f, uint64_t q_max, double t_max,
                                 PrimeInterval interval, const FactorSieve& sieve);

// Kronecker characters of fundamental |d| <= Q only, t = 0; d = 1 (the
// principal direction) is scanned unless excluded
PretentiousReport quadratic_scan(const MultFnSpec& f, uint64_t q_max,
                                 PrimeInterval interval, const FactorSieve& sieve,
                                 bool include_principal = true);

// fundamental discriminants with |d| <= bound, ascending in (|d|, d)
std::vector<int64_t> fundamental_discriminants(uint64_t bound, bool include_one = true);

// h(x) = 1 + (x^2 - 1)/2 - (x^2 - 1)^2/18; majorizes |x| on [-2, 2]
double majorant_h(double x);

struct MultiscaleScan {
  char ladder;  // 'N' for the base ladder, 'M' for bridge scales
  PrimeInterval interval;
  std::string winner;  // label of the winning character
  double dist_sq = 0.0;
};

struct MultiscaleReport {
  std::vector<MultiscaleScan> scans;
  bool consistent = false;
  std::string to_text() const;
};

// Builds scales N_{i-1} = N_i^{eps^2} descending from n_max (floored at 100)
// and bridge scales [N_i^eps, min(N_i^{1/eps}, n_max)], runs a quadratic scan
// on every interval and reports whether all winners coincide.
MultiscaleReport multiscale_consistency(const MultFnSpec& f, double eps, uint64_t n_max,
                                        const FactorSieve& sieve, uint64_t scan_q = 30);

}  // namespace l1lab
