#include "l1lab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace l1lab {

namespace {

struct RawArc {
  double left;
  double right;
  Fraction center;
};

}  // namespace

ArcSet major_arcs(uint64_t q_max, uint64_t n) {
  if (q_max < 1) throw DomainError("major_arcs: Q must be >= 1");
  if (n < 1) throw DomainError("major_arcs: N must be >= 1");

  ArcSet set;
  set.q_max_ = q_max;
  set.n_ = n;
  set.min_component_width_ = 2.0 / double(n);  // the q = Q arcs are narrowest

  std::vector<RawArc> raw;
  auto push = [&](uint64_t a, uint64_t q) {
    const double w = double(q_max) / (double(q) * double(n));
    const double c = double(a) / double(q);
    double l = c - w, r = c + w;
    if (l < 0.0) {
      raw.push_back({0.0, std::min(r, 1.0), {a, q}});
      raw.push_back({std::max(l + 1.0, 0.0), 1.0, {a, q}});
    } else if (r > 1.0) {
      raw.push_back({l, 1.0, {a, q}});
      raw.push_back({0.0, std::min(r - 1.0, 1.0), {a, q}});
    } else {
      raw.push_back({l, r, {a, q}});
    }
  };

  // Farey fractions of order Q in [0, 1), by the next-term recurrence
  uint64_t a = 0, b = 1, c = 1, d = q_max;
  push(a, b);
  while (!(c == 1 && d == 1)) {
    push(c, d);
    uint64_t k = (q_max + b) / d;
    uint64_t e = k * c - a, f = k * d - b;
    a = c;
    b = d;
    c = e;
    d = f;
  }

  std::sort(raw.begin(), raw.end(),
            [](const RawArc& x, const RawArc& y) { return x.left < y.left; });

  for (const RawArc& arc : raw) {
    if (arc.right <= arc.left) continue;
    if (!set.intervals_.empty() && arc.left <= set.intervals_.back().right) {
      Arc& last = set.intervals_.back();
      if (arc.right > last.right) last.right = arc.right;
      if (arc.center.den < last.center.den) last.center = arc.center;
    } else {
      set.intervals_.push_back({arc.center, arc.left, arc.right});
    }
  }

  double measure = 0.0;
  for (const Arc& arc : set.intervals_) measure += arc.right - arc.left;
  set.total_measure_ = measure;
  set.saturated_ = measure >= 1.0 - 1e-12;
  return set;
}

bool ArcSet::contains(double alpha) const {
  alpha -= std::floor(alpha);
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), alpha,
                             [](double v, const Arc& a) { return v < a.left; });
  if (it == intervals_.begin()) return false;
  --it;
  return alpha <= it->right;
}

void ArcSet::write_csv(std::ostream& out) const {
  out << "a,q,left,right\n";
  char buf[128];
  for (const Arc& arc : intervals_) {
    std::snprintf(buf, sizeof buf, "%llu,%llu,%.17g,%.17g\n",
                  (unsigned long long)arc.center.num, (unsigned long long)arc.center.den,
                  arc.left, arc.right);
    out << buf;
  }
}

Location locate(double alpha, uint64_t q_max, uint64_t n) {
  alpha -= std::floor(alpha);
  const double x_limit = double(n) / double(q_max);

  // exact membership scan over q <= Q; the first hit has the smallest q
  for (uint64_t q = 1; q <= q_max; ++q) {
    const double w = double(q_max) / (double(q) * double(n));
    const int64_t a = int64_t(std::llround(alpha * double(q)));
    const double dist = std::abs(alpha - double(a) / double(q));
    if (dist <= w) {
      uint64_t am = uint64_t(((a % int64_t(q)) + int64_t(q)) % int64_t(q));
      uint64_t g = am == 0 ? q : std::gcd(am, q);
      return {true, Fraction{am / g, q / g}, dist};
    }
  }

  // minor: last continued-fraction convergent with denominator <= N/Q
  uint64_t hm1 = 1, hm2 = 0, km1 = 0, km2 = 1;
  uint64_t best_h = 0, best_k = 1;
  double x = alpha;
  for (int iter = 0; iter < 64; ++iter) {
    const double a0d = std::floor(x);
    const uint64_t a0 = uint64_t(a0d);
    const uint64_t h = a0 * hm1 + hm2;
    const uint64_t k = a0 * km1 + km2;
    if (double(k) > x_limit) break;
    best_h = h;
    best_k = k;
    hm2 = hm1;
    hm1 = h;
    km2 = km1;
    km1 = k;
    const double frac = x - a0d;
    if (frac < 1e-14) break;
    x = 1.0 / frac;
  }
  const double dist = std::abs(alpha - double(best_h) / double(best_k));
  return {false, Fraction{best_h % best_k, best_k}, dist};
}

namespace {

// visit(j, w) over all grid cells [j/M, (j+1)/M), with w the fraction of the
// cell covered by the arc set; intervals are sorted and disjoint
template <typename Visit>
void sweep_cells(const ExpSumGrid& grid, const ArcSet& arcs, Visit&& visit) {
  const auto& iv = arcs.intervals();
  const uint64_t m = grid.m;
  const double md = double(m);
  size_t ai = 0;
  for (uint64_t j = 0; j < m; ++j) {
    const double lo = double(j) / md;
    const double hi = double(j + 1) / md;
    while (ai < iv.size() && iv[ai].right <= lo) ++ai;
    double w = 0.0;
    for (size_t k = ai; k < iv.size() && iv[k].left < hi; ++k)
      w += std::max(0.0, std::min(iv[k].right, hi) - std::max(iv[k].left, lo)) * md;
    visit(j, std::min(w, 1.0));
  }
}

void check_resolution(const ExpSumGrid& grid, const ArcSet& arcs, const char* who) {
  if (grid.n != arcs.n_scale())
    throw DomainError(std::string(who) + ": grid and arc set disagree on N");
  if (double(grid.m) * arcs.min_component_width() < 16.0)
    throw DomainError(std::string(who) +
                      ": grid too coarse to resolve the narrowest arc "
                      "(fewer than 16 grid points per arc)");
}

}  // namespace

EnergySplit energy_split(const ExpSumGrid& grid, const ArcSet& arcs) {
  check_resolution(grid, arcs, "energy_split");
  const double h = 1.0 / double(grid.m);
  const double var = h * grid.derivative_bound();
  EnergySplit split;
  sweep_cells(grid, arcs, [&](uint64_t j, double w) {
    const double u = std::abs(grid.values[j]);
    const double e = u * u * h;
    split.major_energy += w * e;
    split.minor_energy += (1.0 - w) * e;
    if (w > 0.0 && w < 1.0) split.quad_error += h * ((u + var) * (u + var) - u * u);
  });
  return split;
}

SupResult minor_sup(const ExpSumGrid& grid, const ArcSet& arcs) {
  check_resolution(grid, arcs, "minor_sup");
  const auto& iv = arcs.intervals();
  const double md = double(grid.m);
  SupResult best;
  size_t ai = 0;
  for (uint64_t j = 0; j < grid.m; ++j) {
    const double x = double(j) / md;
    while (ai < iv.size() && iv[ai].right < x) ++ai;
    const bool inside = ai < iv.size() && iv[ai].left <= x && x <= iv[ai].right;
    if (inside) continue;
    const double v = std::abs(grid.values[j]);
    if (v > best.value) {
      best.value = v;
      best.alpha = x;
    }
  }
  return best;
}

}  // namespace l1lab
