#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "l1lab/common.hpp"
#include "l1lab/expsum.hpp"

namespace l1lab {

// reduced fraction a/q on the circle, 0 <= a < q, gcd(a, q) = 1
struct Fraction {
  uint64_t num = 0;
  uint64_t den = 1;
};

struct Arc {
  Fraction center;  // label: the lowest-denominator fraction the arc covers
  double left;
  double right;  // left < right, both within [0, 1]
};

// Finite union of major arcs (a/q - Q/(qN), a/q + Q/(qN)) over reduced a/q
// with q <= Q, merged to disjoint intervals. Wraparound is handled by
// cutting at 0, so the arc around 0/1 appears as two pieces.
class ArcSet {
 public:
  uint64_t q_max() const { return q_max_; }
  uint64_t n_scale() const { return n_; }
  double total_measure() const { return total_measure_; }
  bool saturated() const { return saturated_; }

  const std::vector<Arc>& intervals() const { return intervals_; }

  bool contains(double alpha) const;

  // narrowest unmerged arc width (the wrap pair counts as one arc)
  double min_component_width() const { return min_component_width_; }

  // CSV rows "a,q,left,right"
  void write_csv(std::ostream& out) const;

  friend ArcSet major_arcs(uint64_t q_max, uint64_t n);

 private:
  uint64_t q_max_ = 1;
  uint64_t n_ = 1;
  double total_measure_ = 0.0;
  double min_component_width_ = 0.0;
  bool saturated_ = false;
  std::vector<Arc> intervals_;
};

ArcSet major_arcs(uint64_t q_max, uint64_t n);

// Diophantine classification of a circle point.
struct Location {
  bool major = false;
  Fraction witness;  // q <= Q for major; Q < q <= N/Q for minor
  double distance = 0.0;
};

Location locate(double alpha, uint64_t q_max, uint64_t n);

struct EnergySplit {
  double major_energy = 0.0;
  double minor_energy = 0.0;
  double quad_error = 0.0;  // endpoint-cell accounting
};

// Riemann sums of |S|^2 over grid cells inside/outside the arc set;
// endpoint cells weighted by the covered fraction.
EnergySplit energy_split(const ExpSumGrid& grid, const ArcSet& arcs);

struct SupResult {
  double value = 0.0;
  double alpha = 0.0;
};

// max of |S| over grid points outside the arcs
SupResult minor_sup(const ExpSumGrid& grid, const ArcSet& arcs);

}  // namespace l1lab
