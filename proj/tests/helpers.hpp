#pragma once

#include <random>
#include <string>

#include "qlab/function.hpp"
#include "qlab/rational.hpp"

namespace testing {

inline qlab::QueryFunction fn(const std::string& literal) { return qlab::parse_function(literal); }

// gmpxx leaves a two-argument mpq_class unreduced; comparisons need it reduced.
inline qlab::Rational frac(long num, long den) {
  qlab::Rational q{num, den};
  q.canonicalize();
  return q;
}

inline qlab::Word word(const std::string& s) { return qlab::word_from_string(s); }

// Random truth table over {0,1,-} with at least one defined cell.
inline std::string random_partial_literal(std::mt19937& rng, int n) {
  std::string cells;
  while (cells.find_first_not_of('-') == std::string::npos) {
    cells.clear();
    for (int i = 0; i < (1 << n); ++i) cells += "01-"[rng() % 3];
  }
  return "tt:" + std::to_string(n) + ":" + cells;
}

}  // namespace testing
