#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qlab/constructions.hpp"
#include "qlab/det_engine.hpp"
#include "qlab/enumerate.hpp"
#include "qlab/game_engine.hpp"

using namespace qlab;
using testing::fn;
using testing::word;

namespace {

// Recomputes both sides of a solution from its trees and distribution.
void check_solution(const QueryFunction& f, const GameSolution& g) {
  CHECK(g.duality_verified);
  CHECK(g.primal_value == g.value);
  CHECK(g.dual_value == g.value);
  CHECK(g.max_error <= g.epsilon);
  Rational total = 0;
  for (const auto& w : g.mixture) total += w;
  CHECK(total == 1);
  std::vector<Rational> cost(f.domain_size(), 0), err(f.domain_size(), 0);
  for (std::size_t k = 0; k < g.trees.size(); ++k) {
    auto p = profile(g.trees[k], f);
    for (std::size_t x = 0; x < f.domain_size(); ++x) {
      cost[x] += g.mixture[k] * p.cost[x];
      if (p.wrong[x]) err[x] += g.mixture[k];
    }
  }
  for (std::size_t x = 0; x < f.domain_size(); ++x) {
    CHECK(cost[x] <= g.value);
    CHECK(err[x] <= g.epsilon);
  }
  // No tree does better than the value against the hard distribution once
  // errors are priced at the reported duals.
  ErrorWeights beta(f.domain_size());
  for (std::size_t x = 0; x < f.domain_size(); ++x) {
    if (g.epsilon == 0) beta[x] = std::nullopt;
    else beta[x] = g.error_prices[x];
  }
  Rational priced = 0;
  for (std::size_t x = 0; x < f.domain_size(); ++x) {
    if (g.epsilon != 0) priced += g.error_prices[x] * g.epsilon;
  }
  auto br = best_response(f, g.hard_distribution.weights(), beta);
  CHECK(br.objective - priced == g.value);
}

}  // namespace

TEST_SUITE("game") {
  TEST_CASE("distributions") {
    auto u = InputDistribution::uniform(4);
    CHECK(u[2] == Rational(1, 4));
    CHECK_THROWS_AS(InputDistribution({Rational(1, 2), Rational(1, 3)}), PreconditionError);
    CHECK_THROWS_AS(InputDistribution({Rational(3, 2), Rational(-1, 2)}), PreconditionError);
    auto prod = InputDistribution::product(InputDistribution::point(2, 1), u);
    CHECK(prod.size() == 8);
    CHECK(prod[4] == Rational(1, 4));
    CHECK(prod[0] == 0);
  }

  TEST_CASE("best response examples") {
    QueryFunction orf = or_function(2);
    std::vector<Rational> point(4, 0);
    point[*orf.index_of(word("00"))] = 1;
    CHECK(best_response(orf, point, forbid_errors(4)).objective == 2);

    QueryFunction sab = sabotage(orf).function;
    std::vector<Rational> alpha(sab.domain_size(), 0);
    alpha[*sab.index_of(word("0*"))] = Rational(1, 2);
    alpha[*sab.index_of(word("*0"))] = Rational(1, 2);
    CHECK(best_response(sab, alpha, forbid_errors(sab.domain_size())).objective == Rational(3, 2));

    QueryFunction one = constant_function(2, true);
    auto r = best_response(one, std::vector<Rational>(4, 1), forbid_errors(4));
    CHECK(r.objective == 0);
    CHECK(r.tree.depth() == 0);
  }

  TEST_CASE("best response matches exhaustive trees on random weights") {
    std::mt19937 rng(23);
    auto funcs = collect(FunctionFamily::all_total(2));
    for (int trial = 0; trial < 120; ++trial) {
      QueryFunction f = funcs[rng() % funcs.size()];
      if (trial % 3 == 0 && !f.is_constant()) f = sabotage(f).function;
      std::size_t n = f.domain_size();
      std::vector<Rational> alpha(n);
      ErrorWeights beta(n);
      for (std::size_t x = 0; x < n; ++x) {
        alpha[x] = testing::frac(rng() % 5, 1 + rng() % 4);
        if (rng() % 3 == 0) beta[x] = std::nullopt;
        else beta[x] = testing::frac(rng() % 7, 1 + rng() % 3);
      }
      std::vector<std::optional<Rational>> b(beta.begin(), beta.end());
      auto r = best_response(f, alpha, beta);
      CHECK(r.objective == oracle::best_response(f, alpha, b));
      // The reported objective is the tree's actual weighted cost.
      auto p = profile(r.tree, f);
      Rational actual = 0;
      for (std::size_t x = 0; x < n; ++x) {
        actual += alpha[x] * p.cost[x];
        if (p.wrong[x]) {
          REQUIRE(beta[x].has_value());
          actual += *beta[x];
        }
      }
      CHECK(actual == r.objective);
    }
  }

  TEST_CASE("landmark values") {
    QueryFunction orf = or_function(2);
    CHECK(solve_expected_game(orf, 0).value == 2);
    CHECK(solve_expected_game(sabotage(orf).function, 0).value == Rational(3, 2));
    CHECK(solve_expected_game(identity_function(), 0).value == 1);
    CHECK(solve_worstcase_depth(orf, Rational(1, 3)).depth == 1);
    CHECK(solve_worstcase_depth(orf, 0).depth == 2);
    CHECK(solve_worstcase_depth(constant_function(2, false), Rational(1, 3)).depth == 0);
    CHECK_THROWS_AS(solve_expected_game(orf, Rational(1, 2)), PreconditionError);
    CHECK_THROWS_AS(solve_expected_game(sabotage(constant_function(2, true)).function, 0), PreconditionError);
  }

  TEST_CASE("sabotage measure bundle") {
    auto m = sabotage_measures(or_function(2));
    CHECK(m.ds == 2);
    CHECK(m.rs == Rational(3, 2));
    CHECK(m.rs_u == Rational(3, 2));
    auto c = sabotage_measures(constant_function(2, false));
    CHECK(c.ds == 0);
    CHECK(c.rs == 0);
    CHECK(c.rs_u == 0);
    CHECK_FALSE(c.rs_game.has_value());
    auto id = sabotage_measures(identity_function());
    CHECK(id.ds == 1);
    CHECK(id.rs == 1);
    CHECK(id.rs_u == 1);
  }

  TEST_CASE("column generation agrees with exhaustive tree mixtures on two bits") {
    const Rational quarter(1, 4), third(1, 3);
    for (const auto& f : collect(FunctionFamily::all_total(2))) {
      CAPTURE(canonical_encoding(f));
      auto r0 = solve_expected_game(f, 0);
      CHECK(r0.value == oracle::r0(f));
      check_solution(f, r0);
      auto rb = solve_expected_game(f, quarter);
      CHECK(rb.value == oracle::rbar(f, quarter));
      check_solution(f, rb);
      auto wc = solve_worstcase_depth(f, third);
      CHECK(wc.depth == oracle::rwc(f, third));
      CHECK(wc.max_error <= third);
      if (!f.is_constant()) {
        QueryFunction sab = sabotage(f).function;
        auto rs = solve_expected_game(sab, 0);
        CHECK(rs.value == oracle::r0(sab));
        check_solution(sab, rs);
        QueryFunction usab = unique_sabotage(f).function;
        CHECK(solve_expected_game(usab, 0).value == oracle::r0(usab));
      }
    }
  }

  TEST_CASE("random partial functions against the oracle") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
      QueryFunction f = fn(testing::random_partial_literal(rng, 1 + static_cast<int>(rng() % 2)));
      CAPTURE(canonical_encoding(f));
      Rational eps = testing::frac(rng() % 4, 9);
      auto g = solve_expected_game(f, eps);
      CHECK(g.value == oracle::rbar(f, eps));
      check_solution(f, g);
      CHECK(solve_worstcase_depth(f, eps).depth == oracle::rwc(f, eps));
    }
  }

  TEST_CASE("tuple outputs run through the same engine") {
    QueryFunction s = direct_sum(identity_function(), 2);
    CHECK(solve_expected_game(s, 0).value == 2);
    CHECK(det_complexity(s).value == 2);
  }
}
