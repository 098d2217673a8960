#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "l1lab/arith.hpp"
#include "l1lab/common.hpp"

namespace l1lab {

// ---------------------------------------------------------------------------
// Smooth windows. The plateau window W_eps is supported in
// [eps/2, 1 - eps/2], equals 1 on [eps, 1 - eps], and satisfies
// |W^(j)| <= c_j eps^{-j}. The dyadic bump K is supported in (1/2, 2) and
// satisfies sum_{k>=0} K(n / 2^k) = 1 for every integer n >= 1.
// Both are glued from the standard C-infinity bump exp(-1/x).
// ---------------------------------------------------------------------------
enum class WindowKind { plateau, dyadic_bump };

class Window {
 public:
  Window(double eps, WindowKind kind);

  static Window zero();  // identically-zero window (degenerate norms)

  double eps() const { return eps_; }
  WindowKind kind() const { return kind_; }
  bool is_zero() const { return zero_; }

  double operator()(double x) const { return derivative(0, x); }

  // j-th derivative, 0 <= j <= 4, exact via truncated Taylor arithmetic
  double derivative(int j, double x) const;

  // [lo, hi] outside of which the window vanishes
  std::pair<double, double> support() const;

  // sup over the support of |W^(j)| on a 1e5-point mesh (cached)
  double derivative_sup(int j) const;

  // recorded constant c_j = sup|W^(j)| * eps^j
  double shape_constant(int j) const { return derivative_sup(j) * std::pow(eps_, j); }

 private:
  double eps_;
  WindowKind kind_;
  bool zero_ = false;
  mutable double sup_cache_[5] = {-1, -1, -1, -1, -1};
};

Window smooth_window(double eps, WindowKind kind = WindowKind::plateau);

// || W ||_{p,r} = 1 + sum_{j<=r} (int |W^(j)|^p)^{1/p}; the leading 1 is
// part of the definition, so the result is always >= 1.
double sobolev_norm(const Window& w, double p, int r);

// Mellin transform int_0^inf W(x) x^{s-1} dx by adaptive quadrature,
// for 0 < Re s < 2.
cplx mellin_eval(const Window& w, cplx s);

// ---------------------------------------------------------------------------
// Coefficient vectors a(1..N) and their exponential sums on a grid.
// ---------------------------------------------------------------------------
struct CoefficientVector {
  // a[n] = a(n) for 1 <= n <= N; a[0] unused and kept at 0
  std::vector<cplx> a;

  CoefficientVector() = default;
  explicit CoefficientVector(uint64_t n) : a(n + 1, cplx(0.0)) {}

  uint64_t n_max() const { return a.empty() ? 0 : a.size() - 1; }
  double l1() const;
  double l2_sq() const;
};

// a(n) = f(n) * W(n/N) * n^{-it}; absent window/twist factors are 1
CoefficientVector coefficient_vector(const MultFnSpec& f, const FactorSieve& sieve,
                                     uint64_t n, const Window* window = nullptr,
                                     const ArchimedeanTwist* twist = nullptr);

struct ExpSumGrid {
  uint64_t n = 0;                 // coefficient length N
  uint64_t m = 0;                 // grid size M (power of two, M >= 8N)
  std::vector<cplx> values;       // values[j] = S(j/M)
  double l1_coeff_sum = 0.0;      // sum_n |a(n)|

  // Lipschitz bound |S'(alpha)| <= 2 pi N sum|a|
  double derivative_bound() const { return kTau * double(n) * l1_coeff_sum; }
  double l2_sq() const;           // (1/M) sum |S(j/M)|^2
};

uint64_t default_grid_size(uint64_t n, int oversample = 8);

// S(j/M) = sum_{n<=N} a(n) e(nj/M) for all j, via one length-M FFT
ExpSumGrid grid_transform(const CoefficientVector& a, uint64_t m);

struct NormEstimate {
  double value;
  double error_bound;
};

// Riemann estimate of ||S||_p on the grid with an honest (Lipschitz-derived)
// error bound; p >= 1.
NormEstimate lp_norm(const ExpSumGrid& grid, double p);

// ---------------------------------------------------------------------------
// Flat binary cache format: header N, M as 64-bit little-endian, then
// interleaved re/im 64-bit floats. Coefficient files carry M = 0 and N
// values; grid files carry M values.
// ---------------------------------------------------------------------------
void save_coefficients(const CoefficientVector& a, const std::string& path);
CoefficientVector load_coefficients(const std::string& path);
void save_grid(const ExpSumGrid& g, const std::string& path);
ExpSumGrid load_grid(const std::string& path);

}  // namespace l1lab
