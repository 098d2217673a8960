#include "l1lab/fnspec.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace l1lab {

namespace {

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }

  std::string_view take_while(bool (*pred)(char)) {
    size_t start = pos;
    while (!done() && pred(peek())) ++pos;
    return s.substr(start, pos - start);
  }

  void expect(char c, const char* what) {
    if (done() || peek() != c)
      throw ParseError(pos, std::string("expected '") + c + "' " + what);
    ++pos;
  }
};

bool is_word_char(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_num_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.' ||
         c == 'e' || c == 'E';
}

int64_t parse_int(Cursor& cur, const char* what) {
  size_t at = cur.pos;
  std::string_view tok = cur.take_while(is_num_char);
  if (tok.empty()) throw ParseError(at, std::string("expected an integer ") + what);
  std::string buf(tok);
  char* end = nullptr;
  long long v = std::strtoll(buf.c_str(), &end, 10);
  if (end != buf.c_str() + buf.size())
    throw ParseError(at, "'" + buf + "' is not an integer " + what);
  return v;
}

uint64_t parse_uint(Cursor& cur, const char* what) {
  size_t at = cur.pos;
  int64_t v = parse_int(cur, what);
  if (v < 0) throw ParseError(at, std::string("expected a nonnegative integer ") + what);
  return uint64_t(v);
}

double parse_real(Cursor& cur, const char* what) {
  size_t at = cur.pos;
  std::string_view tok = cur.take_while(is_num_char);
  if (tok.empty()) throw ParseError(at, std::string("expected a real number ") + what);
  std::string buf(tok);
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw ParseError(at, "'" + buf + "' is not a real number " + what);
  return v;
}

FnAtom parse_atom(Cursor& cur) {
  FnAtom atom;
  atom.offset = cur.pos;
  std::string_view word = cur.take_while(is_word_char);
  if (word.empty()) throw ParseError(cur.pos, "expected an atom name");

  if (word == "one") {
    atom.kind = FnAtom::Kind::one;
  } else if (word == "moebius") {
    atom.kind = FnAtom::Kind::moebius;
  } else if (word == "liouville") {
    atom.kind = FnAtom::Kind::liouville;
  } else if (word == "kronecker") {
    atom.kind = FnAtom::Kind::kronecker;
    cur.expect(':', "after 'kronecker'");
    atom.d = parse_int(cur, "discriminant");
  } else if (word == "char") {
    atom.kind = FnAtom::Kind::character;
    cur.expect(':', "after 'char'");
    atom.q = parse_uint(cur, "modulus");
    cur.expect(':', "after the modulus");
    atom.index = parse_uint(cur, "character index");
  } else if (word == "twist") {
    atom.kind = FnAtom::Kind::twist;
    cur.expect(':', "after 'twist'");
    atom.t = parse_real(cur, "twist parameter");
  } else if (word == "pretend") {
    atom.kind = FnAtom::Kind::pretend;
    cur.expect(':', "after 'pretend'");
    atom.d = parse_int(cur, "discriminant");
    cur.expect(':', "after the discriminant");
    atom.p0 = parse_uint(cur, "prime threshold");
    cur.expect(':', "after the threshold");
    atom.seed = parse_uint(cur, "seed");
  } else if (word == "randompm") {
    atom.kind = FnAtom::Kind::randompm;
    cur.expect(':', "after 'randompm'");
    atom.seed = parse_uint(cur, "seed");
  } else {
    throw ParseError(atom.offset, "unknown atom '" + std::string(word) + "'");
  }
  return atom;
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

FnSpecAst parse_fn_spec_ast(std::string_view s) {
  Cursor cur{s};
  FnSpecAst ast;
  if (cur.done()) throw ParseError(0, "empty function spec");
  ast.atoms.push_back(parse_atom(cur));
  while (!cur.done()) {
    cur.expect('*', "between atoms");
    ast.atoms.push_back(parse_atom(cur));
  }
  return ast;
}

std::string FnSpecAst::canonical() const {
  std::string out;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += '*';
    const FnAtom& a = atoms[i];
    switch (a.kind) {
      case FnAtom::Kind::one: out += "one"; break;
      case FnAtom::Kind::moebius: out += "moebius"; break;
      case FnAtom::Kind::liouville: out += "liouville"; break;
      case FnAtom::Kind::kronecker: out += "kronecker:" + std::to_string(a.d); break;
      case FnAtom::Kind::character:
        out += "char:" + std::to_string(a.q) + ":" + std::to_string(a.index);
        break;
      case FnAtom::Kind::twist: out += "twist:" + fmt_real(a.t); break;
      case FnAtom::Kind::pretend:
        out += "pretend:" + std::to_string(a.d) + ":" + std::to_string(a.p0) + ":" +
               std::to_string(a.seed);
        break;
      case FnAtom::Kind::randompm: out += "randompm:" + std::to_string(a.seed); break;
    }
  }
  return out;
}

namespace {

int sign_at_prime(uint64_t seed, uint64_t p) {
  return (mix64(seed, p) >> 63) ? -1 : 1;
}

// per-atom value at a prime; atoms are all completely multiplicative except
// moebius, which is handled on prime powers
struct AtomEval {
  FnAtom atom;
  std::optional<DirichletCharacter> chi;

  cplx at_prime(uint64_t p) const {
    switch (atom.kind) {
      case FnAtom::Kind::one: return 1.0;
      case FnAtom::Kind::liouville: return -1.0;
      case FnAtom::Kind::moebius: return -1.0;
      case FnAtom::Kind::kronecker: return (*chi)(p);
      case FnAtom::Kind::character: return (*chi)(p);
      case FnAtom::Kind::twist: return unit_phase(atom.t * std::log(double(p)) / kTau);
      case FnAtom::Kind::pretend:
        if (p >= atom.p0) return (*chi)(p);
        return double(sign_at_prime(atom.seed, p));
      case FnAtom::Kind::randompm: return double(sign_at_prime(atom.seed, p));
    }
    return 1.0;
  }

  cplx at_prime_power(uint64_t p, uint32_t k) const {
    if (atom.kind == FnAtom::Kind::moebius) return k == 1 ? cplx(-1.0) : cplx(0.0);
    cplx v = at_prime(p);
    cplx r = 1.0;
    for (uint32_t i = 0; i < k; ++i) r *= v;
    return r;
  }
};

}  // namespace

MultFnSpec build_fn(const FnSpecAst& ast, const FactorSieve& sieve, uint64_t limit) {
  std::vector<AtomEval> evals;
  bool completely = true;
  for (const FnAtom& atom : ast.atoms) {
    AtomEval e{atom, std::nullopt};
    switch (atom.kind) {
      case FnAtom::Kind::moebius:
        completely = false;
        break;
      case FnAtom::Kind::kronecker:
      case FnAtom::Kind::pretend: {
        std::string reason;
        if (!is_fundamental_discriminant(atom.d, &reason))
          throw ParseError(atom.offset, reason);
        e.chi = kronecker_character(atom.d);
        break;
      }
      case FnAtom::Kind::character: {
        if (atom.q < 1 || atom.q > kCharacterModulusCap)
          throw ParseError(atom.offset, "character modulus " + std::to_string(atom.q) +
                                            " outside [1, " +
                                            std::to_string(kCharacterModulusCap) + "]");
        auto chars = characters_mod(atom.q);
        if (atom.index >= chars.size())
          throw ParseError(atom.offset,
                           "character index " + std::to_string(atom.index) + " out of range (" +
                               std::to_string(chars.size()) + " characters mod " +
                               std::to_string(atom.q) + ")");
        e.chi = std::move(chars[atom.index]);
        break;
      }
      default:
        break;
    }
    evals.push_back(std::move(e));
  }

  if (completely) {
    return MultFnSpec::from_prime_values(limit, sieve, [&](uint64_t p) {
      cplx v = 1.0;
      for (const AtomEval& e : evals) v *= e.at_prime(p);
      return v;
    });
  }
  return MultFnSpec::from_prime_power_values(limit, sieve, [&](uint64_t p, uint32_t k) {
    cplx v = 1.0;
    for (const AtomEval& e : evals) v *= e.at_prime_power(p, k);
    return v;
  });
}

MultFnSpec parse_fn_spec(std::string_view s, const FactorSieve& sieve, uint64_t limit) {
  return build_fn(parse_fn_spec_ast(s), sieve, limit);
}

}  // namespace l1lab
