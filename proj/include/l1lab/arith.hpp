#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "l1lab/common.hpp"

namespace l1lab {

// ---------------------------------------------------------------------------
// Smallest-prime-factor sieve. Backs factorization, prime iteration and the
// arithmetic counts (omega, Omega) used everywhere else.
// ---------------------------------------------------------------------------
class FactorSieve {
 public:
  // Largest limit accepted before a ResourceError (4 bytes/entry for spf).
  static constexpr uint64_t kMaxLimit = uint64_t(1) << 26;

  explicit FactorSieve(uint64_t limit);

  uint64_t limit() const { return limit_; }

  // smallest prime factor of n, 2 <= n <= limit
  uint32_t spf(uint64_t n) const;

  bool is_prime(uint64_t n) const { return n >= 2 && spf(n) == n; }

  const std::vector<uint32_t>& primes() const { return primes_; }

  // primes p with lo <= p <= hi, as a view into primes()
  std::span<const uint32_t> primes_in(double lo, double hi) const;

  // sum of 1/p over lo <= p <= hi
  double harmonic_prime_sum(double lo, double hi) const;

  struct PrimePower {
    uint32_t p;
    uint32_t k;
  };

  // prime factorization of n, ascending in p
  void factor(uint64_t n, std::vector<PrimePower>& out) const;

  uint32_t omega(uint64_t n) const;      // # distinct prime factors
  uint32_t big_omega(uint64_t n) const;  // # prime factors with multiplicity

 private:
  uint64_t limit_;
  std::vector<uint32_t> spf_;
  std::vector<uint32_t> primes_;
};

FactorSieve build_factor_sieve(uint64_t limit);

// phi and mu for small arguments, by trial division (no sieve needed)
uint64_t euler_phi(uint64_t n);
int moebius_of(uint64_t n);

// ---------------------------------------------------------------------------
// 1-bounded multiplicative function, stored by its values on prime powers.
// ---------------------------------------------------------------------------
enum class StandardFn { one, moebius, liouville };

class MultFnSpec {
 public:
  // f(p) on primes, extended completely multiplicatively
  static MultFnSpec from_prime_values(uint64_t limit, const FactorSieve& sieve,
                                      const std::function<cplx(uint64_t p)>& fp);

  // f(p^k) on all prime powers <= limit (general multiplicative case)
  static MultFnSpec from_prime_power_values(
      uint64_t limit, const FactorSieve& sieve,
      const std::function<cplx(uint64_t p, uint32_t k)>& fpk);

  uint64_t limit() const { return limit_; }
  bool completely_multiplicative() const { return completely_multiplicative_; }

  // stored (or, in the completely multiplicative case, derived) value f(p^k)
  cplx on_prime_power(uint64_t p, uint32_t k) const;

  cplx on_prime(uint64_t p) const { return on_prime_power(p, 1); }

 private:
  MultFnSpec(uint64_t limit, bool cm) : limit_(limit), completely_multiplicative_(cm) {}

  void set(uint64_t p, uint32_t k, cplx v);

  uint64_t limit_;
  bool completely_multiplicative_;
  std::unordered_map<uint64_t, cplx> values_;  // key = p*128 + k
};

MultFnSpec standard_fn(StandardFn kind, uint64_t limit, const FactorSieve& sieve);

// f(n) by factorization; n <= f.limit
cplx eval_mult_fn(const MultFnSpec& f, const FactorSieve& sieve, uint64_t n);

// f(1..n) in one pass over the sieve; out[0] = 0, out[m] = f(m)
std::vector<cplx> eval_mult_fn_range(const MultFnSpec& f, const FactorSieve& sieve,
                                     uint64_t n);

// ---------------------------------------------------------------------------
// Dirichlet characters. Tables are built from the unit-group structure
// (CRT over prime powers, primitive roots for odd p^k, <-1,5> for 2^k),
// so orthogonality and the order/conductor metadata are exact.
// ---------------------------------------------------------------------------
class DirichletCharacter {
 public:
  uint64_t modulus() const { return modulus_; }
  uint64_t conductor() const { return conductor_; }
  uint64_t order() const { return order_; }
  bool is_primitive() const { return conductor_ == modulus_; }
  bool is_principal() const { return order_ == 1; }
  bool is_quadratic() const { return order_ == 2; }
  bool is_even() const { return even_; }

  // position in the canonical enumeration of characters_mod(modulus)
  uint64_t index() const { return index_; }

  // short printable identity, e.g. "char:12:3" or "kronecker:-4"
  const std::string& label() const { return label_; }

  cplx operator()(uint64_t n) const { return values_[n % modulus_]; }

  const std::vector<cplx>& values() const { return values_; }

  DirichletCharacter(uint64_t modulus, std::vector<cplx> values, uint64_t conductor,
                     uint64_t order, uint64_t index, std::string label);

 private:
  uint64_t modulus_;
  uint64_t conductor_;
  uint64_t order_;
  uint64_t index_;
  bool even_;
  std::string label_;
  std::vector<cplx> values_;
};

// Modulus cap: a full table costs q * 16 bytes per character.
inline constexpr uint64_t kCharacterModulusCap = 10000;

// all phi(q) characters mod q, principal first, deterministic order
std::vector<DirichletCharacter> characters_mod(uint64_t q);

DirichletCharacter principal_character(uint64_t q);

// Kronecker symbol (a/n), full Kronecker extension
int kronecker_symbol(int64_t a, int64_t n);

// strict fundamental-discriminant test; reason receives the failed check
bool is_fundamental_discriminant(int64_t d, std::string* reason = nullptr);

// the real primitive character of conductor |d| for fundamental d
DirichletCharacter kronecker_character(int64_t d);

// the primitive character inducing chi (modulus = chi.conductor())
DirichletCharacter primitive_inducing(const DirichletCharacter& chi);

// the character mod q induced by psi (q must be a multiple of psi's modulus)
DirichletCharacter induce(const DirichletCharacter& psi, uint64_t q);

// tau(psi) = sum_x psi(x) e(x/q); psi must be primitive
cplx gauss_sum(const DirichletCharacter& psi);

// ---------------------------------------------------------------------------
// c_chi(n) = sum_{(x,q)=1} chi(x) e(nx/q), the twisted Ramanujan sum.
// ---------------------------------------------------------------------------
enum class CChiMethod { direct, closed };

// Closed-form evaluator; resolves the inducing primitive character once so
// repeated evaluation is cheap. For chi mod r induced by psi mod q:
//   c_chi(n) = conj(psi)(n/(r,n)) * phi(r)/phi(r/(r,n))
//              * mu(u/q) * psi(u/q) * tau(psi),   u = r/(r,n),
// when q | u, and 0 otherwise.
class CChiClosed {
 public:
  explicit CChiClosed(const DirichletCharacter& chi);
  cplx operator()(uint64_t n) const;

 private:
  uint64_t r_;
  uint64_t q_;
  cplx tau_;
  DirichletCharacter psi_;
  double phi_r_;
};

cplx c_chi(const DirichletCharacter& chi, uint64_t n, CChiMethod method);

// its values have period q; one period evaluated directly
std::vector<cplx> c_chi_period(const DirichletCharacter& chi);

// ---------------------------------------------------------------------------
// Archimedean twist n^{it}.
// ---------------------------------------------------------------------------
struct ArchimedeanTwist {
  double t = 0.0;

  // n^{-it} (the sign convention used in coefficient vectors)
  cplx inverse_at(double n) const { return unit_phase(-t * std::log(n) / kTau); }

  // n^{+it}
  cplx at(double n) const { return unit_phase(t * std::log(n) / kTau); }
};

}  // namespace l1lab
