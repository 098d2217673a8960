#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "l1lab/arith.hpp"
#include "l1lab/common.hpp"

namespace l1lab {

// Parse failure with the byte offset of the offending token.
class ParseError : public DomainError {
 public:
  ParseError(size_t offset, const std::string& message)
      : DomainError("at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// spec := atom ('*' atom)*
// atom := "one" | "moebius" | "liouville" | "kronecker:" int
//       | "char:" q ":" index | "twist:" real
//       | "pretend:" d ":" p0 ":" seed | "randompm:" seed
struct FnAtom {
  enum class Kind { one, moebius, liouville, kronecker, character, twist, pretend, randompm };
  Kind kind = Kind::one;
  int64_t d = 0;        // kronecker / pretend discriminant
  uint64_t q = 0;       // character modulus
  uint64_t index = 0;   // character index
  double t = 0.0;       // twist parameter
  uint64_t p0 = 0;      // pretend threshold
  uint64_t seed = 0;    // pretend / randompm seed
  size_t offset = 0;    // byte offset in the source string
};

struct FnSpecAst {
  std::vector<FnAtom> atoms;
  std::string canonical() const;
};

// syntax only; semantic checks happen in build_fn
FnSpecAst parse_fn_spec_ast(std::string_view s);

// product of the atoms, evaluated on prime powers up to `limit`
MultFnSpec build_fn(const FnSpecAst& ast, const FactorSieve& sieve, uint64_t limit);

// parse + build in one step
MultFnSpec parse_fn_spec(std::string_view s, const FactorSieve& sieve, uint64_t limit);

}  // namespace l1lab
