#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlab/function.hpp"

namespace qlab {

struct FunctionFamily {
  enum class Kind { AllTotal, NonconstantTotal, Explicit };
  Kind kind = Kind::AllTotal;
  int arity = 1;
  std::vector<QueryFunction> members;  // used by Kind::Explicit

  static FunctionFamily all_total(int n) { return {Kind::AllTotal, n, {}}; }
  static FunctionFamily nonconstant_total(int n) { return {Kind::NonconstantTotal, n, {}}; }
  static FunctionFamily named(std::vector<QueryFunction> fs) {
    return {Kind::Explicit, 0, std::move(fs)};
  }
};

inline constexpr int kDefaultEnumerationArity = 4;

// Single-consumer stream over a family. Total families are yielded in
// canonical-encoding order (truth table read as a binary number, first cell
// most significant).
class FunctionStream {
 public:
  explicit FunctionStream(FunctionFamily family, int arity_limit = kDefaultEnumerationArity);
  std::optional<QueryFunction> next();

 private:
  FunctionFamily family_;
  std::uint64_t cursor_ = 0;
  std::uint64_t end_ = 0;
};

std::vector<QueryFunction> collect(FunctionFamily family,
                                   int arity_limit = kDefaultEnumerationArity);

/// The total n-bit function whose truth table, read as a binary number with
/// the first cell most significant, equals `index`.
QueryFunction total_from_index(int n, std::uint64_t index);

// Truth-table constructors for the standard named functions.
QueryFunction or_function(int n);
QueryFunction and_function(int n);
QueryFunction xor_function(int n);
QueryFunction constant_function(int n, bool value);
QueryFunction identity_function();

}  // namespace qlab
