#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlab/function.hpp"

namespace qlab {

// A family of functions, or of (outer, inner) pairs for composition checks.
// Members are produced on demand, so large families cost no memory.
//
//   all-total:<n>           every total n-bit function
//   nonconstant-total:<n>   the same without the two constants
//   named:<name>,...        OR<n>, AND<n>, XOR<n>, ZERO<n>, ONE<n>, ID, IND<m>
//   list:<lit>;<lit>;...    explicit literals (may be empty)
//   compose-pairs:<a>x<b>   nonconstant total pairs of arities a and b
//   compose-pairs:<=<k>     every such pair with a*b <= k
class Family {
 public:
  /// Throws ParseError on bad syntax and LimitExceeded when an enumerated
  /// arity exceeds `arity_limit`.
  static Family parse(std::string_view text, int arity_limit = 4);

  const std::string& descriptor() const { return descriptor_; }
  bool is_pairs() const { return pairs_; }
  std::size_t size() const { return size_; }

  /// Valid for function families.
  QueryFunction function(std::size_t i) const;
  /// Valid for pair families.
  std::pair<QueryFunction, QueryFunction> pair(std::size_t i) const;

 private:
  struct Segment {
    // Enumerated total functions: truth-table indices [first, first + count).
    int arity = 0;
    std::uint64_t first = 0;
    std::uint64_t count = 0;
    // Pair segments: inner arity; outer uses `arity`.
    int inner_arity = 0;
    std::vector<QueryFunction> explicit_members;
    bool is_explicit = false;
  };

  std::size_t size_of(const Segment& s) const;

  std::string descriptor_;
  bool pairs_ = false;
  std::vector<Segment> segments_;
  std::size_t size_ = 0;
};

/// Named standard function, e.g. "OR2", "XOR3", "ID", "IND6".
QueryFunction named_function(std::string_view name);

}  // namespace qlab
