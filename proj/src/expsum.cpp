#include "l1lab/expsum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>

namespace l1lab {

// ---------------------------------------------------------------------------
// Degree-4 truncated Taylor arithmetic ("jets"): windows are built from
// exp(-1/x) glue, and jets give their derivatives to machine precision
// without finite differencing.
// ---------------------------------------------------------------------------
namespace {

constexpr int kJetOrder = 5;  // value + 4 derivatives

struct Jet {
  std::array<double, kJetOrder> c{};  // Taylor coefficients around the point

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  // the identity x, with d(x)/dx scaled by `slope` (chain rule for affine maps)
  static Jet variable(double v, double slope) {
    Jet j;
    j.c[0] = v;
    j.c[1] = slope;
    return j;
  }
};

Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  for (int i = 0; i < kJetOrder; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  for (int i = 0; i < kJetOrder; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  for (int i = 0; i < kJetOrder; ++i)
    for (int j = 0; j + i < kJetOrder; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Jet reciprocal(const Jet& a) {
  Jet r;
  r.c[0] = 1.0 / a.c[0];
  for (int k = 1; k < kJetOrder; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
    r.c[k] = -s / a.c[0];
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet jet_exp(const Jet& a) {
  Jet r;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k < kJetOrder; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += double(j) * a.c[j] * r.c[k - j];
    r.c[k] = s / double(k);
  }
  return r;
}

// exp(-1/x) for x > 0, identically 0 for x <= 0
Jet bump_half(const Jet& x) {
  if (x.c[0] <= 0.0) return Jet{};
  return jet_exp(Jet{} - reciprocal(x));
}

// C-infinity ramp: 0 for x <= 0, 1 for x >= 1, monotone in between
Jet ramp(const Jet& x) {
  if (x.c[0] <= 0.0) return Jet{};
  if (x.c[0] >= 1.0) return Jet::constant(1.0);
  Jet up = bump_half(x);
  Jet down = bump_half(Jet::constant(1.0) - x);
  return up / (up + down);
}

Jet plateau_jet(double x, double eps) {
  // rises on [eps/2, eps], falls on [1-eps, 1-eps/2]
  const double half = eps / 2.0;
  Jet rise = ramp(Jet::variable((x - half) / half, 1.0 / half));
  Jet fall = ramp(Jet::variable(((1.0 - half) - x) / half, -1.0 / half));
  return rise * fall;
}

Jet dyadic_jet(double x) {
  // sigma(x) - sigma(x/2) with sigma rising on [1/2, 1]
  Jet s1 = ramp(Jet::variable(2.0 * x - 1.0, 2.0));
  Jet s2 = ramp(Jet::variable(x - 1.0, 0.5));
  return s1 - s2;
}

double factorial(int j) {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return f;
}

}  // namespace

Window::Window(double eps, WindowKind kind) : eps_(eps), kind_(kind) {
  if (kind == WindowKind::plateau && !(eps > 0.0 && eps < 0.5))
    throw DomainError("plateau window requires eps in (0, 1/2)");
  if (kind == WindowKind::dyadic_bump && !(eps > 0.0 && eps < 0.5))
    throw DomainError("dyadic bump requires eps in (0, 1/2)");
}

Window Window::zero() {
  Window w(0.25, WindowKind::plateau);
  w.zero_ = true;
  return w;
}

Window smooth_window(double eps, WindowKind kind) { return Window(eps, kind); }

double Window::derivative(int j, double x) const {
  if (j < 0 || j > 4) throw DomainError("window derivatives available for 0 <= j <= 4");
  if (zero_) return 0.0;
  auto [lo, hi] = support();
  if (x <= lo || x >= hi) return 0.0;
  Jet v = (kind_ == WindowKind::plateau) ? plateau_jet(x, eps_) : dyadic_jet(x);
  return v.c[j] * factorial(j);
}

std::pair<double, double> Window::support() const {
  if (zero_) return {0.0, 0.0};
  if (kind_ == WindowKind::plateau) return {eps_ / 2.0, 1.0 - eps_ / 2.0};
  return {0.5, 2.0};
}

double Window::derivative_sup(int j) const {
  if (j < 0 || j > 4) throw DomainError("window derivatives available for 0 <= j <= 4");
  if (zero_) return 0.0;
  if (sup_cache_[j] >= 0.0) return sup_cache_[j];
  auto [lo, hi] = support();
  const int mesh = 100000;
  double sup = 0.0;
  for (int i = 0; i <= mesh; ++i) {
    double x = lo + (hi - lo) * double(i) / double(mesh);
    sup = std::max(sup, std::abs(derivative(j, x)));
  }
  sup_cache_[j] = sup;
  return sup;
}

// ---------------------------------------------------------------------------
// Quadrature (composite Simpson; adaptive Simpson for the Mellin integral)
// ---------------------------------------------------------------------------
namespace {

template <typename F>
double simpson(F&& f, double lo, double hi, int intervals) {
  if (hi <= lo) return 0.0;
  const double h = (hi - lo) / intervals;
  double s = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

template <typename F>
cplx adaptive_simpson(F&& f, double lo, double hi, cplx flo, cplx fmid, cplx fhi,
                      cplx whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
  const cplx flm = f(lm), frm = f(rm);
  const cplx left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const cplx right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  const cplx sum = left + right;
  if (depth <= 0 || std::abs(sum - whole) <= 15.0 * tol)
    return sum + (sum - whole) / 15.0;
  return adaptive_simpson(f, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

template <typename F>
cplx integrate_adaptive(F&& f, double lo, double hi, double tol) {
  if (hi <= lo) return 0.0;
  // seed with a few panels so oscillatory integrands are not missed early
  const int panels = 64;
  cplx total = 0.0;
  const double h = (hi - lo) / panels;
  for (int i = 0; i < panels; ++i) {
    double a = lo + i * h, b = a + h, m = 0.5 * (a + b);
    cplx fa = f(a), fm = f(m), fb = f(b);
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(f, a, b, fa, fm, fb, whole, tol / panels, 30);
  }
  return total;
}

}  // namespace

double sobolev_norm(const Window& w, double p, int r) {
  if (p < 1.0) throw DomainError("sobolev_norm: p must be >= 1");
  if (r < 0 || r > 4) throw DomainError("sobolev_norm: r must be between 0 and 4");
  if (w.is_zero()) return 1.0;
  auto [lo, hi] = w.support();
  double total = 1.0;
  for (int j = 0; j <= r; ++j) {
    double ij = simpson([&](double x) { return std::pow(std::abs(w.derivative(j, x)), p); },
                        lo, hi, 1 << 13);
    total += std::pow(ij, 1.0 / p);
  }
  return total;
}

cplx mellin_eval(const Window& w, cplx s) {
  if (!(s.real() > 0.0 && s.real() < 2.0))
    throw DomainError("mellin_eval: Re s must lie in (0, 2)");
  if (w.is_zero()) return 0.0;
  auto [lo, hi] = w.support();
  const cplx sm1 = s - cplx(1.0);
  auto f = [&](double x) -> cplx {
    if (x <= 0.0) return 0.0;
    return w(x) * std::exp(sm1 * std::log(x));
  };
  return integrate_adaptive(f, lo, hi, 1e-12);
}

// ---------------------------------------------------------------------------
// Coefficient vectors
// ---------------------------------------------------------------------------

double CoefficientVector::l1() const {
  double s = 0.0;
  for (size_t i = 1; i < a.size(); ++i) s += std::abs(a[i]);
  return s;
}

double CoefficientVector::l2_sq() const {
  double s = 0.0;
  for (size_t i = 1; i < a.size(); ++i) s += std::norm(a[i]);
  return s;
}

CoefficientVector coefficient_vector(const MultFnSpec& f, const FactorSieve& sieve,
                                     uint64_t n, const Window* window,
                                     const ArchimedeanTwist* twist) {
  if (n == 0 || n > f.limit()) throw DomainError("coefficient_vector: N out of range");
  CoefficientVector out(n);
  auto vals = eval_mult_fn_range(f, sieve, n);
  for (uint64_t k = 1; k <= n; ++k) {
    cplx v = vals[k];
    if (window) v *= (*window)(double(k) / double(n));
    if (twist) v *= twist->inverse_at(double(k));
    out.a[k] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// FFT grid evaluation
// ---------------------------------------------------------------------------

double ExpSumGrid::l2_sq() const {
  double s = 0.0;
  for (const cplx& v : values) s += std::norm(v);
  return s / double(m);
}

uint64_t default_grid_size(uint64_t n, int oversample) {
  uint64_t target = std::max<uint64_t>(8, n * uint64_t(oversample));
  uint64_t m = 1;
  while (m < target) m <<= 1;
  return m;
}

namespace {
std::mutex fftw_planner_mutex;
}

ExpSumGrid grid_transform(const CoefficientVector& a, uint64_t m) {
  const uint64_t n = a.n_max();
  if (m == 0 || (m & (m - 1)) != 0)
    throw DomainError("grid_transform: M must be a power of two");
  if (m < 8 * n)
    throw DomainError("grid_transform: M = " + std::to_string(m) +
                      " is below the 8N floor (8N = " + std::to_string(8 * n) + ")");
  ExpSumGrid g;
  g.n = n;
  g.m = m;
  g.l1_coeff_sum = a.l1();
  g.values.assign(m, cplx(0.0));
  for (uint64_t k = 1; k <= n; ++k) g.values[k] = a.a[k];

  auto* buf = reinterpret_cast<fftw_complex*>(g.values.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    plan = fftw_plan_dft_1d(int(m), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }
  return g;
}

NormEstimate lp_norm(const ExpSumGrid& grid, double p) {
  if (p < 1.0) throw DomainError("lp_norm: p must be >= 1 (quasi-norms out of scope)");
  const double h = 1.0 / double(grid.m);
  const double var = h * grid.derivative_bound();  // |S| variation within one cell
  double sum = 0.0, lower = 0.0, upper = 0.0;
  for (const cplx& v : grid.values) {
    const double u = std::abs(v);
    sum += std::pow(u, p);
    lower += std::pow(std::max(0.0, u - var), p);
    upper += std::pow(u + var, p);
  }
  const double value = std::pow(sum * h, 1.0 / p);
  const double lo = std::pow(lower * h, 1.0 / p);
  const double hi = std::pow(upper * h, 1.0 / p);
  return {value, std::max(value - lo, hi - value)};
}

// ---------------------------------------------------------------------------
// Binary cache format
// ---------------------------------------------------------------------------
namespace {

void write_u64(std::ofstream& out, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  out.write(reinterpret_cast<const char*>(b), 8);
}

uint64_t read_u64(std::ifstream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

void write_values(std::ofstream& out, const cplx* data, uint64_t count) {
  // on a little-endian host the in-memory layout is already the file layout
  out.write(reinterpret_cast<const char*>(data), std::streamsize(count * sizeof(cplx)));
}

void read_values(std::ifstream& in, cplx* data, uint64_t count) {
  in.read(reinterpret_cast<char*>(data), std::streamsize(count * sizeof(cplx)));
}

}  // namespace

void save_coefficients(const CoefficientVector& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  write_u64(out, a.n_max());
  write_u64(out, 0);
  write_values(out, a.a.data() + 1, a.n_max());
}

CoefficientVector load_coefficients(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  uint64_t n = read_u64(in);
  uint64_t m = read_u64(in);
  if (m != 0) throw DomainError(path + " is a grid file, not a coefficient file");
  CoefficientVector a(n);
  read_values(in, a.a.data() + 1, n);
  if (!in) throw DomainError(path + ": truncated coefficient file");
  return a;
}

void save_grid(const ExpSumGrid& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  write_u64(out, g.n);
  write_u64(out, g.m);
  write_values(out, g.values.data(), g.m);
}

ExpSumGrid load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  ExpSumGrid g;
  g.n = read_u64(in);
  g.m = read_u64(in);
  if (g.m == 0) throw DomainError(path + " is a coefficient file, not a grid file");
  g.values.assign(g.m, cplx(0.0));
  read_values(in, g.values.data(), g.m);
  if (!in) throw DomainError(path + ": truncated grid file");

  // the inverse transform recovers the zero-padded coefficients exactly,
  // which restores the |a|-sum needed for error bounds
  std::vector<cplx> coeffs = g.values;
  auto* buf = reinterpret_cast<fftw_complex*>(coeffs.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    plan = fftw_plan_dft_1d(int(g.m), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }
  double l1 = 0.0;
  for (uint64_t k = 1; k <= g.n && k < g.m; ++k) l1 += std::abs(coeffs[k]) / double(g.m);
  g.l1_coeff_sum = l1;
  return g;
}

}  // namespace l1lab
