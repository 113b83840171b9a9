#pragma once

#include <cstdint>

#include "qlab/rational.hpp"

namespace qlab {

// Error probability of the majority vote over k independent runs that each
// err with probability epsilon. k must be odd.
Rational majority_error(const Rational& epsilon, int k);

struct Amplification {
  double bound_count = 0;  // advisory: 2 ln(1/eps') / (1 - 2 eps)^2
  int exact_count = 1;     // smallest odd k with majority_error(eps, k) <= eps'
};

/// Requires 0 < target <= epsilon < 1/2.
Amplification amplification_repetitions(const Rational& epsilon, const Rational& target);

struct Truncation {
  std::int64_t query_cap = 0;     // floor(T / delta)
  Rational success_lower_bound;   // 1 - delta
};

Truncation markov_truncation(const Rational& expected_queries, const Rational& delta);

/// Expected cost T / (1 - epsilon) of rerunning a certificate finder until it succeeds.
Rational repeat_cost(const Rational& expected_queries, const Rational& failure);

/// Advisory multiplier in R_eps <= factor * R̄_eps; 10 at epsilon = 1/3.
double expected_to_worstcase_factor(const Rational& epsilon);

/// Exact factor (1 - 2 eps) / (2 delta) in R_{eps+delta} <= factor * R̄_eps.
Rational truncation_factor(const Rational& epsilon, const Rational& delta);

/// eps * (1 - (1 - 2 eps)^2)^floor(k/2), the closed-form majority bound.
Rational majority_error_bound(const Rational& epsilon, int k);

}  // namespace qlab
