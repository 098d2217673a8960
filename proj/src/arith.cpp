#include "l1lab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace l1lab {

// ---------------------------------------------------------------------------
// FactorSieve
// ---------------------------------------------------------------------------

FactorSieve::FactorSieve(uint64_t limit) : limit_(limit) {
  if (limit < 2) throw DomainError("factor sieve limit must be >= 2");
  if (limit > kMaxLimit)
    throw ResourceError("factor sieve limit " + std::to_string(limit) +
                        " exceeds the configured budget of " + std::to_string(kMaxLimit));
  spf_.assign(limit + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      primes_.push_back(uint32_t(i));
      for (uint64_t j = i; j <= limit; j += i)
        if (spf_[j] == 0) spf_[j] = uint32_t(i);
    }
  }
}

FactorSieve build_factor_sieve(uint64_t limit) { return FactorSieve(limit); }

uint32_t FactorSieve::spf(uint64_t n) const {
  if (n < 2 || n > limit_) throw DomainError("spf: argument out of sieve range");
  return spf_[n];
}

std::span<const uint32_t> FactorSieve::primes_in(double lo, double hi) const {
  if (hi < lo) return {};
  auto first = std::lower_bound(primes_.begin(), primes_.end(), lo,
                                [](uint32_t p, double v) { return double(p) < v; });
  auto last = std::upper_bound(primes_.begin(), primes_.end(), hi,
                               [](double v, uint32_t p) { return v < double(p); });
  if (first >= last) return {};
  return {&*first, size_t(last - first)};
}

double FactorSieve::harmonic_prime_sum(double lo, double hi) const {
  double s = 0.0;
  for (uint32_t p : primes_in(lo, hi)) s += 1.0 / double(p);
  return s;
}

void FactorSieve::factor(uint64_t n, std::vector<PrimePower>& out) const {
  out.clear();
  if (n <= 1) return;
  if (n > limit_) throw DomainError("factor: argument out of sieve range");
  while (n > 1) {
    uint32_t p = spf_[n];
    uint32_t k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({p, k});
  }
}

uint32_t FactorSieve::omega(uint64_t n) const {
  if (n <= 1) return 0;
  if (n > limit_) throw DomainError("omega: argument out of sieve range");
  uint32_t c = 0;
  while (n > 1) {
    uint32_t p = spf_[n];
    ++c;
    while (n % p == 0) n /= p;
  }
  return c;
}

uint32_t FactorSieve::big_omega(uint64_t n) const {
  if (n <= 1) return 0;
  if (n > limit_) throw DomainError("big_omega: argument out of sieve range");
  uint32_t c = 0;
  while (n > 1) {
    n /= spf_[n];
    ++c;
  }
  return c;
}

// ---------------------------------------------------------------------------
// phi, mu by trial division (arguments here are at most the character cap)
// ---------------------------------------------------------------------------

uint64_t euler_phi(uint64_t n) {
  uint64_t result = n;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

int moebius_of(uint64_t n) {
  if (n == 0) return 0;
  int sign = 1;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

// ---------------------------------------------------------------------------
// MultFnSpec
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t pp_key(uint64_t p, uint32_t k) { return p * 128 + k; }

void check_bounded(cplx v, uint64_t p, uint32_t k) {
  if (std::abs(v) > 1.0 + 1e-12)
    throw DomainError("multiplicative function value at " + std::to_string(p) + "^" +
                      std::to_string(k) + " has modulus > 1");
}

cplx pow_int(cplx base, uint32_t k) {
  cplx r = 1.0;
  cplx b = base;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

}  // namespace

void MultFnSpec::set(uint64_t p, uint32_t k, cplx v) { values_[pp_key(p, k)] = v; }

MultFnSpec MultFnSpec::from_prime_values(uint64_t limit, const FactorSieve& sieve,
                                         const std::function<cplx(uint64_t)>& fp) {
  if (limit > sieve.limit()) throw DomainError("function limit exceeds sieve limit");
  MultFnSpec f(limit, true);
  f.values_.reserve(sieve.primes_in(2, double(limit)).size() * 2);
  for (uint32_t p : sieve.primes_in(2, double(limit))) {
    cplx v = fp(p);
    check_bounded(v, p, 1);
    f.set(p, 1, v);
  }
  return f;
}

MultFnSpec MultFnSpec::from_prime_power_values(
    uint64_t limit, const FactorSieve& sieve,
    const std::function<cplx(uint64_t, uint32_t)>& fpk) {
  if (limit > sieve.limit()) throw DomainError("function limit exceeds sieve limit");
  MultFnSpec f(limit, false);
  for (uint32_t p : sieve.primes_in(2, double(limit))) {
    uint64_t pk = p;
    uint32_t k = 1;
    while (true) {
      cplx v = fpk(p, k);
      check_bounded(v, p, k);
      f.set(p, k, v);
      if (pk > limit / p) break;
      pk *= p;
      ++k;
    }
  }
  return f;
}

cplx MultFnSpec::on_prime_power(uint64_t p, uint32_t k) const {
  if (k == 0) return 1.0;
  if (completely_multiplicative_) {
    auto it = values_.find(pp_key(p, 1));
    if (it == values_.end()) throw DomainError("prime out of stored range");
    return k == 1 ? it->second : pow_int(it->second, k);
  }
  auto it = values_.find(pp_key(p, k));
  if (it == values_.end()) throw DomainError("prime power out of stored range");
  return it->second;
}

MultFnSpec standard_fn(StandardFn kind, uint64_t limit, const FactorSieve& sieve) {
  switch (kind) {
    case StandardFn::one:
      return MultFnSpec::from_prime_values(limit, sieve, [](uint64_t) { return cplx(1.0); });
    case StandardFn::liouville:
      return MultFnSpec::from_prime_values(limit, sieve, [](uint64_t) { return cplx(-1.0); });
    case StandardFn::moebius:
      return MultFnSpec::from_prime_power_values(
          limit, sieve, [](uint64_t, uint32_t k) { return k == 1 ? cplx(-1.0) : cplx(0.0); });
  }
  throw DomainError("unknown standard function");
}

cplx eval_mult_fn(const MultFnSpec& f, const FactorSieve& sieve, uint64_t n) {
  if (n == 0 || n > f.limit()) throw DomainError("eval_mult_fn: n out of range");
  cplx r = 1.0;
  while (n > 1) {
    uint32_t p = sieve.spf(n);
    uint32_t k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    r *= f.on_prime_power(p, k);
  }
  return r;
}

std::vector<cplx> eval_mult_fn_range(const MultFnSpec& f, const FactorSieve& sieve,
                                     uint64_t n) {
  if (n > f.limit()) throw DomainError("eval_mult_fn_range: n out of range");
  std::vector<cplx> v(n + 1);
  if (n >= 1) v[1] = 1.0;
  for (uint64_t m = 2; m <= n; ++m) {
    uint32_t p = sieve.spf(m);
    uint64_t rest = m / p;
    uint32_t k = 1;
    while (rest > 1 && sieve.spf(rest) == p) {
      rest /= p;
      ++k;
    }
    v[m] = v[rest] * f.on_prime_power(p, k);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Unit group structure mod q and character tables
// ---------------------------------------------------------------------------

namespace {

struct Component {
  uint64_t pk;       // p^k
  uint32_t p;
  uint32_t k;
  uint64_t cyc;      // order of the main cyclic part
  bool has_sign;     // extra <-1> factor (p = 2, k >= 3)
  // discrete logs indexed by x mod pk (valid for x coprime to p)
  std::vector<uint32_t> log_main;
  std::vector<uint8_t> log_sign;
};

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

std::vector<uint64_t> prime_divisors(uint64_t n) {
  std::vector<uint64_t> ps;
  for (uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

uint64_t primitive_root_mod_p(uint64_t p) {
  if (p == 2) return 1;
  auto qs = prime_divisors(p - 1);
  for (uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (uint64_t q : qs)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw DomainError("no primitive root found");  // unreachable for prime p
}

Component make_component(uint32_t p, uint32_t k, uint64_t pk) {
  Component c;
  c.pk = pk;
  c.p = p;
  c.k = k;
  c.has_sign = false;
  if (p == 2) {
    if (k == 1) {
      c.cyc = 1;
      c.log_main.assign(2, 0);
      return c;
    }
    if (k == 2) {
      c.cyc = 2;
      c.log_main.assign(4, 0);
      c.log_main[3] = 1;
      return c;
    }
    // 2^k, k >= 3: x = (-1)^s * 5^j
    c.has_sign = true;
    c.cyc = pk / 4;
    c.log_main.assign(pk, 0);
    c.log_sign.assign(pk, 0);
    uint64_t v = 1;
    for (uint64_t j = 0; j < c.cyc; ++j) {
      c.log_main[v] = uint32_t(j);
      c.log_sign[v] = 0;
      uint64_t w = pk - v;
      c.log_main[w] = uint32_t(j);
      c.log_sign[w] = 1;
      v = (v * 5) % pk;
    }
    return c;
  }
  // odd p^k: cyclic of order phi(p^k)
  c.cyc = pk / p * (p - 1);
  uint64_t g = primitive_root_mod_p(p);
  if (k > 1 && pow_mod(g, p - 1, uint64_t(p) * p) == 1) g += p;
  c.log_main.assign(pk, 0);
  uint64_t v = 1;
  for (uint64_t j = 0; j < c.cyc; ++j) {
    c.log_main[v] = uint32_t(j);
    v = (v * g) % pk;
  }
  return c;
}

struct UnitGroup {
  uint64_t q;
  std::vector<Component> comps;
};

UnitGroup unit_group(uint64_t q) {
  UnitGroup G;
  G.q = q;
  uint64_t n = q;
  for (uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      uint32_t k = 0;
      uint64_t pk = 1;
      while (n % p == 0) {
        n /= p;
        pk *= p;
        ++k;
      }
      G.comps.push_back(make_component(uint32_t(p), k, pk));
    }
  if (n > 1) G.comps.push_back(make_component(uint32_t(n), 1, n));
  return G;
}

// Exponent tuple of one character: for each component a main exponent in
// [0, cyc) plus, for the 2^k (k>=3) component, a sign exponent in {0,1}.
struct CharExponents {
  std::vector<uint64_t> main;
  std::vector<uint8_t> sign;
};

uint64_t component_conductor(const Component& c, uint64_t e_main, uint8_t e_sign) {
  if (c.p == 2) {
    if (c.k == 1) return 1;
    if (c.k == 2) return e_main ? 4 : 1;
    if (e_main == 0) return e_sign ? 4 : 1;
    uint32_t v = 0;
    uint64_t b = e_main;
    while ((b & 1) == 0) {
      b >>= 1;
      ++v;
    }
    return uint64_t(1) << (c.k - v);
  }
  if (e_main == 0) return 1;
  uint32_t vp = 0;
  uint64_t b = e_main;
  while (b % c.p == 0) {
    b /= c.p;
    ++vp;
  }
  uint32_t j = (vp >= c.k - 1) ? 1 : (c.k - vp);
  uint64_t cond = 1;
  for (uint32_t i = 0; i < j; ++i) cond *= c.p;
  return cond;
}

uint64_t component_order(const Component& c, uint64_t e_main, uint8_t e_sign) {
  uint64_t o = c.cyc / std::gcd(c.cyc, e_main == 0 ? c.cyc : e_main);
  if (e_main == 0) o = 1;
  if (c.has_sign && e_sign) o = std::lcm<uint64_t>(o, 2);
  return o;
}

std::vector<cplx> character_table(const UnitGroup& G, const CharExponents& e) {
  std::vector<cplx> vals(G.q, cplx(0.0));
  if (G.q == 1) {
    vals[0] = 1.0;
    return vals;
  }
  for (uint64_t x = 0; x < G.q; ++x) {
    if (std::gcd(x, G.q) != 1) continue;
    double phase = 0.0;
    bool ok = true;
    for (size_t i = 0; i < G.comps.size() && ok; ++i) {
      const Component& c = G.comps[i];
      uint64_t xi = x % c.pk;
      if (c.cyc > 1 || c.has_sign) {
        phase += double(e.main[i]) * double(c.log_main[xi]) / double(c.cyc);
        if (c.has_sign && e.sign[i] && c.log_sign[xi]) phase += 0.5;
      }
    }
    vals[x] = unit_phase(phase);
  }
  return vals;
}

}  // namespace

DirichletCharacter::DirichletCharacter(uint64_t modulus, std::vector<cplx> values,
                                       uint64_t conductor, uint64_t order, uint64_t index,
                                       std::string label)
    : modulus_(modulus),
      conductor_(conductor),
      order_(order),
      index_(index),
      label_(std::move(label)),
      values_(std::move(values)) {
  even_ = modulus_ <= 2 || values_[modulus_ - 1].real() > 0.0;
}

std::vector<DirichletCharacter> characters_mod(uint64_t q) {
  if (q < 1) throw DomainError("characters_mod: q must be >= 1");
  if (q > kCharacterModulusCap)
    throw ResourceError("characters_mod: q = " + std::to_string(q) +
                        " exceeds the character-modulus cap " +
                        std::to_string(kCharacterModulusCap));
  UnitGroup G = unit_group(q);
  const size_t nc = G.comps.size();

  // enumerate exponent tuples in mixed radix, principal character first
  std::vector<DirichletCharacter> chars;
  CharExponents e;
  e.main.assign(nc, 0);
  e.sign.assign(nc, 0);
  uint64_t index = 0;
  while (true) {
    uint64_t conductor = 1;
    uint64_t order = 1;
    for (size_t i = 0; i < nc; ++i) {
      conductor *= component_conductor(G.comps[i], e.main[i], e.sign[i]);
      order = std::lcm(order, component_order(G.comps[i], e.main[i], e.sign[i]));
    }
    chars.emplace_back(q, character_table(G, e), conductor, order, index,
                       "char:" + std::to_string(q) + ":" + std::to_string(index));
    ++index;

    // increment tuple: sign digits first, then main digits
    size_t i = 0;
    for (; i < nc; ++i) {
      if (G.comps[i].has_sign && e.sign[i] == 0) {
        e.sign[i] = 1;
        break;
      }
      if (G.comps[i].has_sign) e.sign[i] = 0;
      if (e.main[i] + 1 < G.comps[i].cyc) {
        ++e.main[i];
        break;
      }
      e.main[i] = 0;
    }
    if (i == nc) break;
  }
  return chars;
}

DirichletCharacter principal_character(uint64_t q) {
  if (q < 1) throw DomainError("principal_character: q must be >= 1");
  std::vector<cplx> vals(q, cplx(0.0));
  if (q == 1)
    vals[0] = 1.0;
  else
    for (uint64_t x = 0; x < q; ++x)
      if (std::gcd(x, q) == 1) vals[x] = 1.0;
  return DirichletCharacter(q, std::move(vals), 1, 1, 0, "char:" + std::to_string(q) + ":0");
}

// ---------------------------------------------------------------------------
// Kronecker symbol and fundamental discriminants
// ---------------------------------------------------------------------------

int kronecker_symbol(int64_t a, int64_t n) {
  // (a/0)
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int k = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  if (n % 2 == 0) {
    if (a % 2 == 0) return 0;
    int v = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++v;
    }
    int64_t am = ((a % 8) + 8) % 8;
    if (v % 2 == 1 && (am == 3 || am == 5)) k = -k;
  }
  a %= n;
  if (a < 0) a += n;
  // now n odd positive, 0 <= a < n
  while (a != 0) {
    int v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    int64_t nm = n % 8;
    if (v % 2 == 1 && (nm == 3 || nm == 5)) k = -k;
    // quadratic reciprocity for odd a, n
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    int64_t r = a;
    a = n % r;
    n = r;
  }
  return n == 1 ? k : 0;
}

namespace {

bool is_squarefree_small(int64_t m) {
  uint64_t n = uint64_t(m < 0 ? -m : m);
  if (n == 0) return false;
  for (uint64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

}  // namespace

bool is_fundamental_discriminant(int64_t d, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (d == 0) return fail("0 is not a discriminant");
  int64_t mod4 = ((d % 4) + 4) % 4;
  if (mod4 == 1) {
    if (!is_squarefree_small(d)) return fail(std::to_string(d) + " = 1 mod 4 but is not squarefree");
    return true;
  }
  if (mod4 == 2) return fail(std::to_string(d) + " = 2 mod 4 is not a discriminant");
  if (mod4 == 3) {
    // -d = 1 mod 4, so the recursion terminates at the squarefree check
    return fail(std::to_string(d) + " = 3 mod 4 is not a fundamental discriminant (" +
                std::to_string(-d) + (is_fundamental_discriminant(-d) ? " is)" : " is not either)"));
  }
  int64_t m = d / 4;
  int64_t m4 = ((m % 4) + 4) % 4;
  if (m4 != 2 && m4 != 3)
    return fail("d/4 = " + std::to_string(m) + " = " + std::to_string(m4) +
                " mod 4; need 2 or 3 mod 4");
  if (!is_squarefree_small(m)) return fail("d/4 = " + std::to_string(m) + " is not squarefree");
  return true;
}

DirichletCharacter kronecker_character(int64_t d) {
  std::string reason;
  if (!is_fundamental_discriminant(d, &reason))
    throw DomainError("kronecker_character: " + reason);
  uint64_t q = uint64_t(d < 0 ? -d : d);
  std::vector<cplx> vals(q, cplx(0.0));
  for (uint64_t x = 0; x < q; ++x) vals[x] = double(kronecker_symbol(d, int64_t(x)));
  uint64_t order = (q == 1) ? 1 : 2;
  return DirichletCharacter(q, std::move(vals), q, order, 0, "kronecker:" + std::to_string(d));
}

// ---------------------------------------------------------------------------
// Induction / restriction between moduli
// ---------------------------------------------------------------------------

DirichletCharacter primitive_inducing(const DirichletCharacter& chi) {
  uint64_t q = chi.modulus();
  uint64_t q0 = chi.conductor();
  if (q0 == q)
    return chi;
  std::vector<cplx> vals(q0, cplx(0.0));
  if (q0 == 1) {
    vals[0] = 1.0;
  } else {
    for (uint64_t x = 0; x < q0; ++x) {
      if (std::gcd(x, q0) != 1) continue;
      uint64_t y = x;
      while (std::gcd(y, q) != 1) y += q0;  // lift to a residue coprime to q
      vals[x] = chi(y);
    }
  }
  return DirichletCharacter(q0, std::move(vals), q0, chi.order(), 0,
                            chi.label() + "~prim");
}

DirichletCharacter induce(const DirichletCharacter& psi, uint64_t q) {
  if (q % psi.modulus() != 0)
    throw DomainError("induce: target modulus is not a multiple of the character modulus");
  std::vector<cplx> vals(q, cplx(0.0));
  if (q == 1) {
    vals[0] = 1.0;
  } else {
    for (uint64_t x = 0; x < q; ++x)
      if (std::gcd(x, q) == 1) vals[x] = psi(x);
  }
  return DirichletCharacter(q, std::move(vals), psi.conductor(), psi.order(), 0,
                            psi.label() + "~mod" + std::to_string(q));
}

// ---------------------------------------------------------------------------
// Gauss sums and c_chi
// ---------------------------------------------------------------------------

cplx gauss_sum(const DirichletCharacter& psi) {
  if (!psi.is_primitive()) throw DomainError("gauss_sum: character must be primitive");
  uint64_t q = psi.modulus();
  if (q == 1) return 1.0;
  cplx s = 0.0;
  for (uint64_t x = 1; x < q; ++x)
    if (std::gcd(x, q) == 1) s += psi(x) * unit_phase(double(x) / double(q));
  return s;
}

std::vector<cplx> c_chi_period(const DirichletCharacter& chi) {
  uint64_t q = chi.modulus();
  std::vector<cplx> out(q, cplx(0.0));
  // roots of unity table keeps the inner loop free of trig calls
  std::vector<cplx> e(q);
  for (uint64_t j = 0; j < q; ++j) e[j] = unit_phase(double(j) / double(q));
  for (uint64_t x = (q == 1 ? 0 : 1); x < std::max<uint64_t>(q, 1); ++x) {
    if (q > 1 && std::gcd(x, q) != 1) continue;
    cplx cx = chi(x);
    if (cx == cplx(0.0)) continue;
    for (uint64_t n = 0; n < q; ++n) out[n] += cx * e[(n * x) % q];
  }
  if (q == 1) out[0] = 1.0;
  return out;
}

CChiClosed::CChiClosed(const DirichletCharacter& chi)
    : r_(chi.modulus()),
      q_(chi.conductor()),
      tau_(0.0),
      psi_(primitive_inducing(chi)),
      phi_r_(double(euler_phi(chi.modulus()))) {
  tau_ = gauss_sum(psi_);
}

cplx CChiClosed::operator()(uint64_t n) const {
  uint64_t g = std::gcd(r_, n);
  uint64_t u = r_ / g;  // r / (r, n)
  if (u % q_ != 0) return 0.0;
  uint64_t m = n / g;  // n / (r, n)
  cplx v = std::conj(psi_(m));
  if (v == cplx(0.0)) return 0.0;
  uint64_t w = u / q_;
  int mu = moebius_of(w);
  if (mu == 0) return 0.0;
  cplx pw = psi_(w);
  if (pw == cplx(0.0)) return 0.0;
  return v * (phi_r_ / double(euler_phi(u))) * double(mu) * pw * tau_;
}

cplx c_chi(const DirichletCharacter& chi, uint64_t n, CChiMethod method) {
  if (n < 1) throw DomainError("c_chi: n must be >= 1");
  if (method == CChiMethod::direct) {
    uint64_t q = chi.modulus();
    if (q == 1) return 1.0;
    cplx s = 0.0;
    for (uint64_t x = 1; x < q; ++x)
      if (std::gcd(x, q) == 1) s += chi(x) * unit_phase(double(n % q) * double(x) / double(q));
    return s;
  }
  return CChiClosed(chi)(n);
}

}  // namespace l1lab
