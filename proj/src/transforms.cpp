#include "qlab/transforms.hpp"

#include <cmath>

#include "qlab/function.hpp"

namespace qlab {

namespace {

Rational power(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

Rational majority_error(const Rational& epsilon, int k) {
  if (k < 1 || k % 2 == 0) throw PreconditionError("majority vote needs an odd number of runs");
  if (sgn(epsilon) < 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in [0, 1)");
  // Wrong when at most (k-1)/2 of the k runs are right.
  const int half = (k - 1) / 2;
  const Rational right = 1 - epsilon;
  Rational sum;
  for (int i = 0; i <= half; ++i) {
    sum += Rational(binomial(k, i)) * power(epsilon, k - i) * power(right, i);
  }
  return sum;
}

Rational majority_error_bound(const Rational& epsilon, int k) {
  const Rational gap = 1 - 2 * epsilon;
  return epsilon * power(1 - gap * gap, k / 2);
}

Amplification amplification_repetitions(const Rational& epsilon, const Rational& target) {
  if (epsilon >= Rational(1, 2)) throw PreconditionError("epsilon must be below 1/2");
  if (sgn(target) <= 0 || target > epsilon) {
    throw PreconditionError("target error must lie in (0, epsilon]");
  }
  Amplification a;
  const double gap = 1.0 - 2.0 * to_double(epsilon);
  a.bound_count = 2.0 * std::log(1.0 / to_double(target)) / (gap * gap);
  int k = 1;
  while (majority_error(epsilon, k) > target) k += 2;
  a.exact_count = k;
  return a;
}

Truncation markov_truncation(const Rational& expected_queries, const Rational& delta) {
  if (sgn(expected_queries) < 0) throw PreconditionError("expected query count must be >= 0");
  if (sgn(delta) <= 0 || delta >= 1) throw PreconditionError("delta must lie in (0, 1)");
  Rational ratio = expected_queries / delta;
  mpz_class cap;
  mpz_fdiv_q(cap.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  if (!cap.fits_slong_p()) throw LimitExceeded("query cap does not fit in 64 bits");
  return {cap.get_si(), Rational(1 - delta)};
}

Rational repeat_cost(const Rational& expected_queries, const Rational& failure) {
  if (sgn(failure) < 0 || failure >= 1) throw PreconditionError("failure probability must lie in [0, 1)");
  return expected_queries / (1 - failure);
}

double expected_to_worstcase_factor(const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon >= Rational(1, 2)) {
    throw PreconditionError("epsilon must lie in (0, 1/2)");
  }
  if (epsilon == Rational(1, 3)) return 10.0;
  const double e = to_double(epsilon);
  const double gap = 1.0 - 2.0 * e;
  return 14.0 * std::log(1.0 / e) / (gap * gap);
}

Rational truncation_factor(const Rational& epsilon, const Rational& delta) {
  if (sgn(delta) <= 0) throw PreconditionError("delta must be positive");
  if (sgn(epsilon) < 0 || epsilon >= Rational(1, 2)) {
    throw PreconditionError("epsilon must lie in [0, 1/2)");
  }
  return (1 - 2 * epsilon) / (2 * delta);
}

}  // namespace qlab
