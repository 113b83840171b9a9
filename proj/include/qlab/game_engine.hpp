#pragma once

#include <optional>
#include <vector>

#include "qlab/decision_tree.hpp"
#include "qlab/function.hpp"
#include "qlab/rational.hpp"

namespace qlab {

// Probability weights over Dom(f), indexed like the domain.
class InputDistribution {
 public:
  InputDistribution() = default;
  explicit InputDistribution(std::vector<Rational> weights);  // checks >= 0, sum 1

  static InputDistribution uniform(std::size_t size);
  static InputDistribution point(std::size_t size, std::size_t at);
  /// mu ⊗ nu over the concatenated domain, first factor most significant.
  static InputDistribution product(const InputDistribution& a, const InputDistribution& b);

  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<Rational> weights_;
};

// Per-input price of an error; std::nullopt forbids erring on that input.
using ErrorWeights = std::vector<std::optional<Rational>>;

ErrorWeights forbid_errors(std::size_t size);

struct BestResponse {
  DecisionTree tree;
  Rational objective;
};

/// Tree minimising sum_x cost_weights[x]*queries(x) + error_weights[x]*[wrong on x],
/// optionally restricted to depth <= depth_budget.
BestResponse best_response(const QueryFunction& f, const std::vector<Rational>& cost_weights,
                           const ErrorWeights& error_weights,
                           std::optional<int> depth_budget = std::nullopt);

struct GameIteration {
  Rational master_value;
  Rational pricing_value;
  std::size_t columns = 0;
};

struct GameSolution {
  Rational value;
  Rational epsilon;
  InputDistribution hard_distribution;   // adversary optimum
  std::vector<Rational> error_prices;    // per-input error duals (zero when epsilon = 0)
  std::vector<DecisionTree> trees;       // support of the optimal mixture
  std::vector<Rational> mixture;         // weights, parallel to `trees`
  std::vector<GameIteration> log;

  // Audit: the value seen from both players, computed independently.
  Rational primal_value;  // max over inputs of the mixture's expected cost
  Rational dual_value;    // the adversary's guaranteed expected cost
  Rational max_error;     // max over inputs of the mixture's error probability
  bool duality_verified = false;
};

/// R̄_ε(f) (R0 when epsilon = 0) by column generation over decision trees.
/// Requires a nonempty domain and 0 <= epsilon < 1/2.
GameSolution solve_expected_game(const QueryFunction& f, const Rational& epsilon);

struct WorstCaseResult {
  int depth = 0;
  std::vector<DecisionTree> trees;
  std::vector<Rational> mixture;
  Rational max_error;  // of the returned mixture
  std::vector<Rational> min_max_error_by_depth;  // optimum for depths 0..depth
};

/// R_ε(f): the smallest depth d for which a mixture of depth-d trees errs
/// with probability at most epsilon on every input.
WorstCaseResult solve_worstcase_depth(const QueryFunction& f, const Rational& epsilon);

struct SabotageMeasures {
  int ds = 0;
  Rational rs;
  Rational rs_u;
  std::optional<GameSolution> rs_game;    // absent when the sabotage domain is empty
  std::optional<GameSolution> rs_u_game;
};

SabotageMeasures sabotage_measures(const QueryFunction& f);

}  // namespace qlab
