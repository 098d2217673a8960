#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "l1lab/expsum.hpp"

using namespace l1lab;

namespace {

// test-side adaptive Simpson, independent of the library quadrature
double simpson_rec(double (*f)(double), double lo, double hi, double flo, double fmid,
                   double fhi, double whole, double tol, int depth) {
  double mid = 0.5 * (lo + hi);
  double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
  double flm = f(lm), frm = f(rm);
  double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
  double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return simpson_rec(f, lo, mid, flo, flm, fmid, left, tol / 2, depth - 1) +
         simpson_rec(f, mid, hi, fmid, frm, fhi, right, tol / 2, depth - 1);
}

double adaptive(double (*f)(double), double lo, double hi, double tol) {
  // seed with fine panels so narrow spikes cannot be missed
  const int panels = 8192;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    double a = lo + (hi - lo) * i / panels, b = lo + (hi - lo) * (i + 1) / panels;
    double mid = 0.5 * (a + b);
    double fa = f(a), fm = f(mid), fb = f(b);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    total += simpson_rec(f, a, b, fa, fm, fb, whole, tol / panels, 30);
  }
  return total;
}

constexpr int kDirichletN = 1024;

// |sum_{n<=N} e(n a)| in closed form
double dirichlet_kernel_abs(double a) {
  double s = std::sin(std::numbers::pi * a);
  if (std::abs(s) < 1e-14) return double(kDirichletN);
  return std::abs(std::sin(std::numbers::pi * kDirichletN * a) / s);
}

CoefficientVector random_vector(uint64_t n, uint64_t seed) {
  SplitMix64 rng(seed);
  CoefficientVector a(n);
  for (uint64_t k = 1; k <= n; ++k)
    a.a[k] = cplx(2 * rng.next_unit() - 1, 2 * rng.next_unit() - 1) / std::sqrt(2.0);
  return a;
}

}  // namespace

TEST_CASE("grid transform basics") {
  CoefficientVector ones(4);
  for (int k = 1; k <= 4; ++k) ones.a[k] = 1.0;
  ExpSumGrid g = grid_transform(ones, 32);
  CHECK(std::abs(g.values[0] - cplx(4.0)) < 1e-12);        // S(0) = 4
  CHECK(std::abs(g.values[16]) < 1e-12);                   // S(1/2) = 0
  CHECK_THROWS_AS(grid_transform(ones, 16), DomainError);  // below the 8N floor
  CHECK_THROWS_AS(grid_transform(ones, 33), DomainError);  // not a power of two

  CoefficientVector single(1);
  single.a[1] = 1.0;
  ExpSumGrid g1 = grid_transform(single, 64);
  for (const cplx& v : g1.values) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
}

TEST_CASE("parseval on the grid") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    uint64_t n = 1000 + 7919 * seed;
    CoefficientVector a = random_vector(n, seed);
    ExpSumGrid g = grid_transform(a, default_grid_size(n));
    double coeff = a.l2_sq();
    CHECK(std::abs(g.l2_sq() - coeff) <= 1e-6 * coeff);
  }
  // and at the largest advertised size
  CoefficientVector a = random_vector(1 << 16, 99);
  ExpSumGrid g = grid_transform(a, default_grid_size(1 << 16));
  CHECK(std::abs(g.l2_sq() - a.l2_sq()) <= 1e-6 * a.l2_sq());
}

TEST_CASE("lp_norm closed-form cases") {
  // all-ones, p = 2: sqrt(N)
  CoefficientVector ones(256);
  for (int k = 1; k <= 256; ++k) ones.a[k] = 1.0;
  ExpSumGrid g = grid_transform(ones, default_grid_size(256));
  NormEstimate l2 = lp_norm(g, 2.0);
  CHECK(l2.value == doctest::Approx(16.0).epsilon(1e-9));

  // a = (1,1), p = 1: integral of 2|cos(pi a)| = 4/pi
  CoefficientVector pair(2);
  pair.a[1] = pair.a[2] = 1.0;
  ExpSumGrid g2 = grid_transform(pair, 4096);
  NormEstimate l1 = lp_norm(g2, 1.0);
  CHECK(l1.value == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-5));
  CHECK(std::abs(l1.value - 4.0 / std::numbers::pi) <= l1.error_bound);

  CHECK_THROWS_AS(lp_norm(g2, 0.5), DomainError);

  // degenerate zero vector
  CoefficientVector zero(8);
  ExpSumGrid gz = grid_transform(zero, 64);
  CHECK(lp_norm(gz, 1.0).value == 0.0);
  CHECK(lp_norm(gz, 1.0).error_bound == 0.0);
}

TEST_CASE("dirichlet kernel L1 matches the quadrature oracle within 2%") {
  double oracle = adaptive(dirichlet_kernel_abs, 0.0, 1.0, 1e-10);
  CoefficientVector a(kDirichletN);
  for (int k = 1; k <= kDirichletN; ++k) a.a[k] = 1.0;
  ExpSumGrid g = grid_transform(a, default_grid_size(kDirichletN));
  NormEstimate l1 = lp_norm(g, 1.0);
  CHECK(std::abs(l1.value - oracle) <= 0.02 * oracle);
}

TEST_CASE("lp_norm error bound is honest under grid refinement") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    uint64_t n = 64 + (mix64(1, seed) % (1 << 12));
    CoefficientVector a = random_vector(n, seed + 1000);
    uint64_t m = default_grid_size(n);
    NormEstimate coarse = lp_norm(grid_transform(a, m), 1.0);
    NormEstimate fine = lp_norm(grid_transform(a, 2 * m), 1.0);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.error_bound);
  }
}

TEST_CASE("shift covariance: grid-aligned modulation permutes |S|") {
  uint64_t n = 500;
  CoefficientVector a = random_vector(n, 5);
  uint64_t m = default_grid_size(n);
  ExpSumGrid g = grid_transform(a, m);
  // beta = 16/M shifts the grid by 16 cells
  CoefficientVector b(n);
  for (uint64_t k = 1; k <= n; ++k)
    b.a[k] = a.a[k] * unit_phase(double(16 * k) / double(m));
  ExpSumGrid gb = grid_transform(b, m);
  for (uint64_t j = 0; j < m; ++j)
    CHECK(std::abs(std::abs(gb.values[j]) - std::abs(g.values[(j + 16) % m])) < 1e-9);
  CHECK(std::abs(lp_norm(g, 1.0).value - lp_norm(gb, 1.0).value) < 1e-9);
}

TEST_CASE("plateau window shape") {
  Window w(0.25, WindowKind::plateau);
  CHECK(w(0.5) == doctest::Approx(1.0));
  CHECK(w(1.0 / 16.0) == 0.0);
  CHECK(w(0.3) == doctest::Approx(1.0));
  CHECK(w(0.95) == 0.0);
  for (double x : {0.14, 0.2, 0.8, 0.86}) {
    CHECK(w(x) >= 0.0);
    CHECK(w(x) <= 1.0);
  }
  CHECK_THROWS_AS(Window(0.6, WindowKind::plateau), DomainError);

  // c_1 = max|W'| * eps stays within a factor 2 across eps
  double c_prev = -1.0;
  for (double eps : {0.25, 0.125, 0.0625}) {
    Window we(eps, WindowKind::plateau);
    double c1 = we.shape_constant(1);
    if (c_prev > 0) {
      CHECK(c1 / c_prev < 2.0);
      CHECK(c_prev / c1 < 2.0);
    }
    c_prev = c1;
  }
}

TEST_CASE("window derivatives agree with finite differences") {
  Window w(0.25, WindowKind::plateau);
  const double h = 1e-5;
  for (double x : {0.15, 0.2, 0.22, 0.81, 0.86}) {
    double fd1 = (w(x + h) - w(x - h)) / (2 * h);
    CHECK(w.derivative(1, x) == doctest::Approx(fd1).epsilon(1e-5));
    double fd2 = (w(x + h) - 2 * w(x) + w(x - h)) / (h * h);
    CHECK(w.derivative(2, x) == doctest::Approx(fd2).epsilon(1e-4));
  }
}

TEST_CASE("dyadic bump partitions unity over scales") {
  Window k(0.25, WindowKind::dyadic_bump);
  for (uint64_t n : {1ull, 2ull, 3ull, 7ull, 100ull, 4097ull, 999983ull, 1000000ull}) {
    double total = 0.0;
    for (int j = 0; j < 64; ++j) {
      double x = double(n) / double(uint64_t(1) << j);
      total += k(x);
      if (x < 0.5) break;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("sobolev norm") {
  Window w(0.25, WindowKind::plateau);
  double s12 = sobolev_norm(w, 1.0, 2);
  double s22 = sobolev_norm(w, 2.0, 2);
  CHECK(s12 >= 1.0);
  CHECK(s22 >= 1.0);
  CHECK(s12 <= s22 * s22);

  Window w8(0.125, WindowKind::plateau);
  CHECK(sobolev_norm(w8, 1.0, 2) <= sobolev_norm(w8, 2.0, 2) * sobolev_norm(w8, 2.0, 2));

  CHECK(sobolev_norm(Window::zero(), 2.0, 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(sobolev_norm(w, 2.0, 5), DomainError);
}

TEST_CASE("mellin transform") {
  Window w(0.25, WindowKind::plateau);
  // W~(1) = integral of W = 1 - 3 eps/2 by the symmetry of the ramps;
  // also pinned against a direct Simpson oracle
  cplx m1 = mellin_eval(w, cplx(1.0));
  CHECK(m1.imag() == doctest::Approx(0.0));
  CHECK(m1.real() == doctest::Approx(1.0 - 1.5 * 0.25).epsilon(1e-8));
  int steps = 1 << 15;
  double direct = 0.0;
  for (int i = 0; i <= steps; ++i) {
    double x = double(i) / steps;
    double f = w(x);
    direct += (i == 0 || i == steps) ? f : ((i % 2) ? 4 * f : 2 * f);
  }
  direct /= 3.0 * steps;
  CHECK(m1.real() == doctest::Approx(direct).epsilon(1e-7));

  CHECK(std::abs(mellin_eval(Window::zero(), cplx(1.0))) == 0.0);
  CHECK_THROWS_AS(mellin_eval(w, cplx(2.5)), DomainError);

  // decay: |W~(1+it)| (1+t^2) stays bounded by a multiple of ||W||_{1,2}
  double s12 = sobolev_norm(w, 1.0, 2);
  for (double t : {1.0, 4.0, 16.0, 64.0}) {
    double v = std::abs(mellin_eval(w, cplx(1.0, t))) * (1.0 + t * t);
    CHECK(v <= 10.0 * s12);
  }
}

TEST_CASE("coefficient vectors") {
  FactorSieve sieve(1 << 10);
  MultFnSpec one = standard_fn(StandardFn::one, 1 << 10, sieve);
  MultFnSpec lam = standard_fn(StandardFn::liouville, 1 << 10, sieve);

  CoefficientVector c1 = coefficient_vector(one, sieve, 4);
  for (int k = 1; k <= 4; ++k) CHECK(c1.a[k].real() == doctest::Approx(1.0));

  CoefficientVector c2 = coefficient_vector(lam, sieve, 5);
  double expect[] = {0, 1, -1, -1, 1, -1};
  for (int k = 1; k <= 5; ++k) CHECK(c2.a[k].real() == doctest::Approx(expect[k]));

  Window w(0.25, WindowKind::plateau);
  CoefficientVector c3 = coefficient_vector(one, sieve, 100, &w);
  CHECK(c3.a[50].real() == doctest::Approx(1.0));
  CHECK(c3.a[10].real() == 0.0);  // 0.10 sits below the support edge eps/2
  CHECK(c3.a[15].real() > 0.0);   // 0.15 sits inside the ramp [eps/2, eps]
  CHECK(c3.a[15].real() <= 1.0);

  ArchimedeanTwist tw{1.5};
  CoefficientVector c4 = coefficient_vector(one, sieve, 10, nullptr, &tw);
  CHECK(std::abs(c4.a[7] - tw.inverse_at(7.0)) < 1e-12);
}

TEST_CASE("binary round trip") {
  CoefficientVector a = random_vector(300, 17);
  save_coefficients(a, "coeffs.bin");
  CoefficientVector b = load_coefficients("coeffs.bin");
  REQUIRE(b.n_max() == a.n_max());
  for (uint64_t k = 1; k <= a.n_max(); ++k) CHECK(a.a[k] == b.a[k]);

  ExpSumGrid g = grid_transform(a, default_grid_size(300));
  save_grid(g, "grid.bin");
  ExpSumGrid h = load_grid("grid.bin");
  REQUIRE(h.m == g.m);
  REQUIRE(h.n == g.n);
  for (uint64_t j = 0; j < g.m; ++j) CHECK(g.values[j] == h.values[j]);
  CHECK(h.l1_coeff_sum == doctest::Approx(g.l1_coeff_sum).epsilon(1e-12));

  CHECK_THROWS_AS(load_grid("coeffs.bin"), DomainError);
  CHECK_THROWS_AS(load_coefficients("grid.bin"), DomainError);
  std::remove("coeffs.bin");
  std::remove("grid.bin");
}
