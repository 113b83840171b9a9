#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "qlab/lp.hpp"
#include "small_rational.hpp"

using namespace qlab;

namespace {

// Exact check of an optimal solution: every row and bound holds.
bool primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  for (const auto& c : lp.constraints()) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < c.coefficients.size(); ++j) lhs += c.coefficients[j] * x[j];
    if (c.relation == Relation::LessEqual && lhs > c.rhs) return false;
    if (c.relation == Relation::GreaterEqual && lhs < c.rhs) return false;
    if (c.relation == Relation::Equal && lhs != c.rhs) return false;
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& b = lp.bounds()[j];
    if (b.lower && x[j] < *b.lower) return false;
    if (b.upper && x[j] > *b.upper) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("tiny programs") {
    LinearProgram p(1, Sense::Maximize);
    p.set_objective({1});
    p.add_constraint({1}, Relation::LessEqual, 3);
    auto s = solve_lp(p);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.objective == 3);
    CHECK(s.dual[0] == 1);

    LinearProgram u(1, Sense::Maximize);
    u.set_objective({1});
    CHECK(solve_lp(u).status == LPStatus::Unbounded);

    LinearProgram bad(1, Sense::Minimize);
    bad.add_constraint({1}, Relation::LessEqual, 1);
    bad.add_constraint({1}, Relation::GreaterEqual, 2);
    CHECK(solve_lp(bad).status == LPStatus::Infeasible);
    CHECK_FALSE(check_feasible(bad).feasible);
  }

  TEST_CASE("feasibility witnesses") {
    LinearProgram p(1, Sense::Minimize);
    p.add_constraint({1}, Relation::LessEqual, 1);
    auto r = check_feasible(p);
    REQUIRE(r.feasible);
    CHECK(r.witness[0] == 0);
    CHECK(check_feasible(LinearProgram(3, Sense::Minimize)).feasible);
  }

  TEST_CASE("fractional packing at the all-zero input of OR") {
    // Blocks {1}, {2}, {1,2}; each position carries weight at most 1.
    LinearProgram p(3, Sense::Maximize);
    p.set_objective({1, 1, 1});
    p.add_constraint({1, 0, 1}, Relation::LessEqual, 1);
    p.add_constraint({0, 1, 1}, Relation::LessEqual, 1);
    auto s = solve_lp(p);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.objective == 2);
    CHECK(s.dual_objective == 2);
  }

  TEST_CASE("free and bounded variables") {
    // min x + y with x free, x >= -5 via a row, y in [1, 4], x + y >= -2.
    LinearProgram p(2, Sense::Minimize);
    p.set_objective({1, 1});
    p.set_bounds(0, std::nullopt, std::nullopt);
    p.set_bounds(1, Rational(1), Rational(4));
    p.add_constraint({1, 0}, Relation::GreaterEqual, -5);
    p.add_constraint({1, 1}, Relation::GreaterEqual, -2);
    auto s = solve_lp(p);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.objective == -2);
    CHECK(primal_feasible(p, s.primal));
  }

  TEST_CASE("random programs agree with the dense oracle") {
    // min c.x, A x = b, x >= 0 with small random integer data.
    std::mt19937 rng(11);
    int optimal = 0;
    for (int trial = 0; trial < 150; ++trial) {
      std::size_t m = 1 + rng() % 4;
      std::size_t n = 2 + rng() % 5;
      std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
      std::vector<Rational> b(m), c(n);
      LinearProgram p(n, Sense::Minimize);
      for (std::size_t j = 0; j < n; ++j) c[j] = static_cast<int>(rng() % 7);
      p.set_objective(c);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<int>(rng() % 7) - 2;
        b[i] = static_cast<int>(rng() % 6);
        p.add_constraint(a[i], Relation::Equal, b[i]);
      }
      auto mine = solve_lp(p);
      auto ref = oracle::minimize(a, b, c);
      CHECK((mine.status == LPStatus::Optimal) == ref.has_value());
      if (ref && mine.status == LPStatus::Optimal) {
        ++optimal;
        CHECK(mine.objective == *ref);
        CHECK(mine.dual_objective == *ref);
        CHECK(primal_feasible(p, mine.primal));
      }
    }
    CHECK(optimal > 30);
  }

  TEST_CASE("incremental rows match a fresh solve") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t n = 2 + rng() % 3;
      LinearProgram p(n, Sense::Maximize);
      std::vector<Rational> obj(n);
      for (auto& v : obj) v = 1 + static_cast<int>(rng() % 4);
      p.set_objective(obj);
      std::vector<Rational> box(n, 1);
      p.add_constraint(box, Relation::LessEqual, 10);
      IncrementalLP inc(p);
      for (int k = 0; k < 4; ++k) {
        std::vector<Rational> row(n);
        for (auto& v : row) v = static_cast<int>(rng() % 5);
        Rational rhs = 1 + static_cast<int>(rng() % 8);
        p.add_constraint(row, Relation::LessEqual, rhs);
        const auto& got = inc.add_constraint(row, Relation::LessEqual, rhs);
        auto fresh = solve_lp(p);
        REQUIRE(got.status == fresh.status);
        if (fresh.status == LPStatus::Optimal) {
          CHECK(got.objective == fresh.objective);
          CHECK(primal_feasible(p, got.primal));
        }
      }
      if (inc.solution().status == LPStatus::Optimal) CHECK_NOTHROW(inc.certify());
    }
  }

  TEST_CASE("word-sized rationals track GMP") {
    using detail::SmallRational;
    std::mt19937_64 rng(3);
    auto pick = [&]() -> Rational {
      // Mix small values with ones near the 64-bit edge to force fallbacks.
      long span = (rng() % 4 == 0) ? (1L << 62) : 1000;
      long num = static_cast<long>(rng() % static_cast<unsigned long>(span)) - span / 2;
      long den = 1 + static_cast<long>(rng() % static_cast<unsigned long>(span / 2));
      Rational q{mpz_class(num), mpz_class(den)};
      q.canonicalize();
      return q;
    };
    for (int trial = 0; trial < 20000; ++trial) {
      Rational x = pick(), y = pick();
      SmallRational a(x), b(y);
      CHECK((a + b).to_rational() == x + y);
      CHECK((a - b).to_rational() == x - y);
      CHECK((a * b).to_rational() == x * y);
      if (y != 0) CHECK((a / b).to_rational() == x / y);
      CHECK((a < b) == (x < y));
      CHECK((a == b) == (x == y));
      CHECK(a.sign() == sgn(x));
      CHECK((-a).to_rational() == -x);
      // Results that stay big must still combine correctly.
      SmallRational big = a * b * a * b;
      CHECK((big + a).to_rational() == x * y * x * y + x);
    }
    CHECK_THROWS_AS(SmallRational(0).inverse(), std::domain_error);
  }
}
