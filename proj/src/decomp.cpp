#include "l1lab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace l1lab {

// ---------------------------------------------------------------------------
// Turan-Kubilius weights
// ---------------------------------------------------------------------------

TKWeights::TKWeights(PrimeInterval interval, const FactorSieve& sieve)
    : interval_(interval), harmonic_(0.0), sieve_(&sieve) {
  if (interval.hi < interval.lo) throw DomainError("tk_weights: interval has hi < lo");
  if (interval.hi > double(sieve.limit()))
    throw DomainError("tk_weights: interval exceeds the sieve limit");
  harmonic_ = sieve.harmonic_prime_sum(interval.lo, interval.hi);
  if (harmonic_ <= 0.0) throw DomainError("tk_weights: no primes in the interval");
}

double TKWeights::c1(uint64_t n) const {
  if (n == 0 || n > sieve_->limit()) throw DomainError("tk weight: n out of sieve range");
  uint32_t count = 0;
  uint64_t m = n;
  while (m > 1) {
    const uint32_t p = sieve_->spf(m);
    if (double(p) >= interval_.lo && double(p) <= interval_.hi) ++count;
    while (m % p == 0) m /= p;
  }
  return double(count) / harmonic_;
}

TKWeights tk_weights(PrimeInterval interval, const FactorSieve& sieve) {
  return TKWeights(interval, sieve);
}

TKCheck tk_check(PrimeInterval interval, uint64_t n, const FactorSieve& sieve) {
  if (n > sieve.limit()) throw DomainError("tk_check: N exceeds the sieve limit");
  TKWeights w(interval, sieve);
  double lhs = 0.0;
  for (uint64_t m = 1; m <= n; ++m) {
    const double c2 = w.c2(m);
    lhs += c2 * c2;
  }
  const double rhs = 4.0 * double(n) / w.harmonic_sum();
  return {lhs, rhs, lhs / rhs};
}

// ---------------------------------------------------------------------------
// Presieve
// ---------------------------------------------------------------------------

PresievePair presieve(const MultFnSpec& f, double a, const FactorSieve& sieve) {
  if (a < 2.0) throw DomainError("presieve: A must be >= 2");
  MultFnSpec completely = MultFnSpec::from_prime_values(
      f.limit(), sieve,
      [&](uint64_t p) { return double(p) <= a ? cplx(1.0) : f.on_prime(p); });
  MultFnSpec truncated = MultFnSpec::from_prime_power_values(
      f.limit(), sieve, [&](uint64_t p, uint32_t k) {
        return double(p) <= a ? cplx(1.0) : f.on_prime_power(p, k);
      });
  return {std::move(completely), std::move(truncated)};
}

// ---------------------------------------------------------------------------
// Criterion certificate
// ---------------------------------------------------------------------------

CriterionReport criterion_certificate(const CriterionInput& input) {
  const ExpSumGrid& s1 = *input.s1;
  const ExpSumGrid& s2 = *input.s2;
  const ExpSumGrid& s3 = *input.s3;
  const ArcSet& arcs = *input.arcs;
  if (s1.m != s2.m || s1.m != s3.m || s1.n != s2.n || s1.n != s3.n)
    throw DomainError("criterion: the three grids must share N and M");
  if (input.delta <= 0.0) throw DomainError("criterion: Delta must be positive");

  const uint64_t m = s1.m;
  const uint64_t n = s1.n;

  // full sum S and the major-arc component S1 + S2
  ExpSumGrid total;
  total.n = n;
  total.m = m;
  total.l1_coeff_sum = s1.l1_coeff_sum + s2.l1_coeff_sum + s3.l1_coeff_sum;
  total.values.resize(m);
  ExpSumGrid s12;
  s12.n = n;
  s12.m = m;
  s12.l1_coeff_sum = s1.l1_coeff_sum + s2.l1_coeff_sum;
  s12.values.resize(m);
  for (uint64_t j = 0; j < m; ++j) {
    const cplx v12 = s1.values[j] + s2.values[j];
    s12.values[j] = v12;
    total.values[j] = v12 + s3.values[j];
  }

  CriterionReport rep;
  const double total2 = total.l2_sq();
  rep.s_l2 = std::sqrt(total2);
  if (total2 == 0.0) {
    rep.degenerate = true;
    return rep;
  }

  const EnergySplit split12 = energy_split(s12, arcs);
  rep.delta1 = std::sqrt(std::max(0.0, split12.major_energy)) / rep.s_l2;
  rep.delta2 = std::sqrt(s2.l2_sq()) / rep.s_l2;
  rep.delta3 = std::sqrt(s3.l2_sq()) / rep.s_l2;

  const SupResult sup1 = minor_sup(s1, arcs);
  rep.minor_sup_s1 = sup1.value;
  rep.minor_sup_slack = s1.derivative_bound() / double(m);
  rep.minor_threshold = std::sqrt(double(n)) * rep.s_l2 / input.delta;
  rep.minor_hypothesis = rep.minor_sup_s1 + rep.minor_sup_slack <= rep.minor_threshold;

  const double dsum = rep.delta1 + rep.delta2 + rep.delta3;
  rep.applicable = dsum < 1.0;
  if (rep.applicable) {
    rep.k_param = 2.0 / (1.0 - dsum);
    const double beta = 1.0 - dsum - (rep.delta2 + rep.delta3) / rep.k_param;
    rep.implied_l1_lower = beta * beta * rep.s_l2 * input.delta /
                           ((1.0 + rep.k_param) * std::sqrt(double(n)));
  }

  const NormEstimate l1 = lp_norm(total, 1.0);
  rep.measured_l1 = l1.value;
  rep.measured_l1_error = l1.error_bound;
  return rep;
}

std::string CriterionReport::to_text() const {
  char buf[512];
  std::string out = "l1lab-report v1 criterion\n";
  auto add = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s %.17g\n", key, v);
    out += buf;
  };
  if (degenerate) {
    out += "degenerate true\n";
    return out;
  }
  add("s_l2", s_l2);
  add("delta1", delta1);
  add("delta2", delta2);
  add("delta3", delta3);
  add("minor_sup_s1", minor_sup_s1);
  add("minor_sup_slack", minor_sup_slack);
  add("minor_threshold", minor_threshold);
  out += std::string("minor_hypothesis ") + (minor_hypothesis ? "true" : "false") + "\n";
  out += std::string("applicable ") + (applicable ? "true" : "false") + "\n";
  if (applicable) {
    add("k_param", k_param);
    add("implied_l1_lower", implied_l1_lower);
  }
  add("measured_l1", measured_l1);
  add("measured_l1_error", measured_l1_error);
  return out;
}

}  // namespace l1lab
