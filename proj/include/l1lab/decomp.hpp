#pragma once

#include <cstdint>
#include <string>

#include "l1lab/arcs.hpp"
#include "l1lab/arith.hpp"
#include "l1lab/common.hpp"
#include "l1lab/expsum.hpp"
#include "l1lab/pretentious.hpp"

namespace l1lab {

// ---------------------------------------------------------------------------
// Turan-Kubilius weights for an interval I of primes:
//   c1(n) = (sum_{p in I} 1/p)^{-1} * #{p in I : p | n},   c2 = 1 - c1.
// ---------------------------------------------------------------------------
class TKWeights {
 public:
  TKWeights(PrimeInterval interval, const FactorSieve& sieve);

  double harmonic_sum() const { return harmonic_; }
  PrimeInterval interval() const { return interval_; }

  double c1(uint64_t n) const;
  double c2(uint64_t n) const { return 1.0 - c1(n); }

 private:
  PrimeInterval interval_;
  double harmonic_;
  const FactorSieve* sieve_;
};

TKWeights tk_weights(PrimeInterval interval, const FactorSieve& sieve);

struct TKCheck {
  double lhs;    // sum_{n<=N} c2(n)^2
  double rhs;    // 4N / harmonic_sum
  double ratio;  // lhs / rhs
};

TKCheck tk_check(PrimeInterval interval, uint64_t n, const FactorSieve& sieve);

// ---------------------------------------------------------------------------
// Presieve: strip the behaviour of f on primes <= A.
//   completely:  f_{>=A}(p) = f(p) for p > A, 1 for p <= A, extended
//                completely multiplicatively;
//   truncated:   multiplicative, f(p^k) for p > A, 1 for p <= A.
// ---------------------------------------------------------------------------
struct PresievePair {
  MultFnSpec completely;
  MultFnSpec truncated;
};

PresievePair presieve(const MultFnSpec& f, double a, const FactorSieve& sieve);

// ---------------------------------------------------------------------------
// The L1 lower-bound certificate: measures the hypotheses of the main
// criterion on a concrete decomposition S = S1 + S2 + S3 and re-derives the
// implied bound numerically.
// ---------------------------------------------------------------------------
struct CriterionInput {
  const ExpSumGrid* s1 = nullptr;
  const ExpSumGrid* s2 = nullptr;
  const ExpSumGrid* s3 = nullptr;
  const ArcSet* arcs = nullptr;
  double delta = 1.0;
};

struct CriterionReport {
  bool degenerate = false;  // ||S||_2 = 0
  double s_l2 = 0.0;
  double delta1 = 0.0;  // ||(S1+S2) 1_major||_2 / ||S||_2
  double delta2 = 0.0;  // ||S2||_2 / ||S||_2
  double delta3 = 0.0;  // ||S3||_2 / ||S||_2
  double minor_sup_s1 = 0.0;
  double minor_sup_slack = 0.0;  // grid-discreteness allowance
  double minor_threshold = 0.0;  // N^{1/2} ||S||_2 / Delta
  bool minor_hypothesis = false;
  bool applicable = false;  // delta1 + delta2 + delta3 < 1
  double k_param = 0.0;
  double implied_l1_lower = 0.0;
  double measured_l1 = 0.0;
  double measured_l1_error = 0.0;

  std::string to_text() const;
};

CriterionReport criterion_certificate(const CriterionInput& input);

}  // namespace l1lab
