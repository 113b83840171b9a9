#include "qlab/game_engine.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "qlab/constructions.hpp"
#include "qlab/det_engine.hpp"
#include "qlab/lp.hpp"

namespace qlab {

InputDistribution::InputDistribution(std::vector<Rational> weights) : weights_(std::move(weights)) {
  Rational total;
  for (const auto& w : weights_) {
    if (sgn(w) < 0) throw PreconditionError("negative probability weight");
    total += w;
  }
  if (total != 1) throw PreconditionError("probability weights do not sum to 1");
}

InputDistribution InputDistribution::uniform(std::size_t size) {
  if (size == 0) throw PreconditionError("uniform distribution over an empty domain");
  return InputDistribution(std::vector<Rational>(size, Rational(1, size)));
}

InputDistribution InputDistribution::point(std::size_t size, std::size_t at) {
  std::vector<Rational> w(size);
  w.at(at) = 1;
  return InputDistribution(std::move(w));
}

InputDistribution InputDistribution::product(const InputDistribution& a,
                                             const InputDistribution& b) {
  std::vector<Rational> w;
  w.reserve(a.size() * b.size());
  for (const auto& x : a.weights_) {
    for (const auto& y : b.weights_) w.push_back(x * y);
  }
  return InputDistribution(std::move(w));
}

ErrorWeights forbid_errors(std::size_t size) { return ErrorWeights(size); }

namespace {

using Cost = std::optional<mpz_class>;  // std::nullopt is +infinity

class PricingSearch {
 public:
  PricingSearch(const QueryFunction& f, const std::vector<Rational>& alpha,
                const ErrorWeights& beta, std::optional<int> budget)
      : f_(f), masks_(f), budget_(budget),
        memo_(budget ? static_cast<std::size_t>(*budget) + 1 : 1) {
    if (alpha.size() != f.domain_size() || beta.size() != f.domain_size()) {
      throw PreconditionError("weight vectors must be indexed by the domain");
    }
    // Work in integers: scale every weight by the lcm of the denominators.
    scale_ = 1;
    for (const auto& a : alpha) {
      if (sgn(a) < 0) throw PreconditionError("negative cost weight");
      mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), a.get_den_mpz_t());
    }
    for (const auto& b : beta) {
      if (!b) continue;
      if (sgn(*b) < 0) throw PreconditionError("negative error weight");
      mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), b->get_den_mpz_t());
    }
    for (const auto& a : alpha) alpha_.push_back(a.get_num() * (scale_ / a.get_den()));
    for (const auto& b : beta) {
      if (b) beta_.emplace_back(b->get_num() * (scale_ / b->get_den()));
      else beta_.emplace_back();
    }
    std::map<Label, int> ids;
    for (std::size_t i = 0; i < f.domain_size(); ++i) ids.emplace(f.value(i), 0);
    for (auto& [label, id] : ids) {
      id = static_cast<int>(labels_.size());
      labels_.push_back(label);
    }
    for (std::size_t i = 0; i < f.domain_size(); ++i) label_id_.push_back(ids.at(f.value(i)));
  }

  /// Undo the integer scaling of an objective value.
  Rational unscale(const mpz_class& v) const {
    Rational r(v, scale_);
    r.canonicalize();
    return r;
  }

  Cost value(const DomainSet& s, int depth_left) {
    auto& memo = memo_[slot(depth_left)];
    if (auto it = memo.find(s); it != memo.end()) return it->second.value;
    Entry e = solve(s, depth_left);
    Cost v = e.value;
    memo.emplace(s, std::move(e));
    return v;
  }

  int build(const DomainSet& s, int depth_left, DecisionTree& tree) {
    const Entry& e = memo_[slot(depth_left)].at(s);
    if (e.position < 0) return tree.add_leaf(e.leaf);
    std::array<int, kMaxSymbols> children{-1, -1, -1, -1};
    for (int a = 0; a < kMaxSymbols; ++a) {
      DomainSet child = s & masks_.mask(e.position, static_cast<Symbol>(a));
      if (!child.empty()) children[static_cast<std::size_t>(a)] = build(child, next(depth_left), tree);
    }
    return tree.add_query(e.position, children);
  }

  int root_depth() const { return budget_ ? *budget_ : -1; }

 private:
  struct Entry {
    Cost value;
    int position = -1;
    Label leaf;
  };

  std::size_t slot(int depth_left) const {
    return budget_ ? static_cast<std::size_t>(depth_left) : 0;
  }
  int next(int depth_left) const { return budget_ ? depth_left - 1 : -1; }

  Entry solve(const DomainSet& s, int depth_left) {
    Entry best;
    // Leaf: pick the label whose wrong inputs carry the least error weight.
    struct Mass {
      mpz_class finite;
      int infinite = 0;
      bool present = false;
    };
    std::vector<Mass> by_label(labels_.size());
    Mass total;
    mpz_class alpha_sum;
    s.for_each([&](std::size_t i) {
      Mass& m = by_label[static_cast<std::size_t>(label_id_[i])];
      m.present = true;
      if (beta_[i]) {
        m.finite += *beta_[i];
        total.finite += *beta_[i];
      } else {
        ++m.infinite;
        ++total.infinite;
      }
      alpha_sum += alpha_[i];
    });
    // Labels are visited in sorted order, so ties go to the smallest label.
    for (std::size_t l = 0; l < labels_.size(); ++l) {
      const Mass& m = by_label[l];
      if (!m.present || total.infinite - m.infinite > 0) continue;
      mpz_class err = total.finite - m.finite;
      if (!best.value || err < *best.value) {
        best.value = err;
        best.leaf = labels_[l];
      }
    }
    if (s.empty()) {
      best.value = mpz_class(0);
      best.leaf = Label::boolean(false);
    }
    if (budget_ && depth_left == 0) return best;
    if (best.value && sgn(*best.value) == 0) return best;

    for (int p = 0; p < f_.arity(); ++p) {
      int parts = 0;
      std::array<DomainSet, kMaxSymbols> children;
      for (int a = 0; a < kMaxSymbols; ++a) {
        children[static_cast<std::size_t>(a)] = s & masks_.mask(p, static_cast<Symbol>(a));
        if (!children[static_cast<std::size_t>(a)].empty()) ++parts;
      }
      if (parts < 2) continue;
      Cost cand = alpha_sum;
      for (const auto& child : children) {
        if (child.empty()) continue;
        Cost c = value(child, next(depth_left));
        if (!c) {
          cand.reset();
          break;
        }
        *cand += *c;
      }
      if (cand && (!best.value || *cand < *best.value)) {
        best.value = cand;
        best.position = p;
      }
    }
    return best;
  }

  const QueryFunction& f_;
  mpz_class scale_;
  std::vector<mpz_class> alpha_;
  std::vector<std::optional<mpz_class>> beta_;
  std::vector<Label> labels_;  // distinct outputs in sorted order
  std::vector<int> label_id_;
  PositionMasks masks_;
  std::optional<int> budget_;
  std::vector<std::unordered_map<DomainSet, Entry, DomainSetHash>> memo_;
};

struct Column {
  DecisionTree tree;
  TreeProfile profile;
};

bool add_column(std::vector<Column>& columns, DecisionTree tree, const QueryFunction& f) {
  TreeProfile p = profile(tree, f);
  for (const auto& c : columns) {
    if (c.profile == p) return false;
  }
  columns.push_back({std::move(tree), std::move(p)});
  return true;
}

std::vector<Rational> uniform_weights(std::size_t n) {
  return std::vector<Rational>(n, Rational(1, n));
}

}  // namespace

BestResponse best_response(const QueryFunction& f, const std::vector<Rational>& cost_weights,
                           const ErrorWeights& error_weights, std::optional<int> depth_budget) {
  if (depth_budget && *depth_budget < 0) throw PreconditionError("negative depth budget");
  PricingSearch search(f, cost_weights, error_weights, depth_budget);
  DomainSet all(f.domain_size(), true);
  Cost v = search.value(all, search.root_depth());
  if (!v) throw std::logic_error("no admissible tree for the given error regime");
  BestResponse r;
  r.objective = search.unscale(*v);
  r.tree.set_root(search.build(all, search.root_depth(), r.tree));
  return r;
}

GameSolution solve_expected_game(const QueryFunction& f, const Rational& epsilon) {
  const std::size_t n = f.domain_size();
  if (n == 0) throw PreconditionError("game over an empty domain");
  if (sgn(epsilon) < 0 || epsilon >= Rational(1, 2)) {
    throw PreconditionError("epsilon must lie in [0, 1/2)");
  }
  const bool zero_error = sgn(epsilon) == 0;

  std::vector<Column> columns;
  add_column(columns, best_response(f, uniform_weights(n), forbid_errors(n)).tree, f);

  GameSolution sol;
  sol.epsilon = epsilon;
  LPSolution master;
  std::vector<Rational> mu(n);
  ErrorWeights nu = forbid_errors(n);
  Rational z;

  // Adversary master: maximise z - eps*sum(nu) subject to sum(mu) = 1 and
  // z <= sum_x mu_x cost_T(x) + nu_x err_T(x) for every generated tree T.
  // The duals of the tree rows form the algorithm's mixture.
  const std::size_t z_var = zero_error ? n : 2 * n;
  auto tree_row = [&](const Column& c) {
    std::vector<Rational> row(z_var + 1);
    row[z_var] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = -c.profile.cost[i];
      if (!zero_error && c.profile.wrong[i]) row[n + i] = -1;
    }
    return row;
  };
  LinearProgram lp(z_var + 1, Sense::Maximize);
  lp.set_bounds(z_var, std::nullopt, std::nullopt);
  lp.set_objective_coefficient(z_var, 1);
  if (!zero_error) {
    for (std::size_t i = 0; i < n; ++i) lp.set_objective_coefficient(n + i, -epsilon);
  }
  {
    std::vector<Rational> row(z_var + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = 1;
    lp.add_constraint(std::move(row), Relation::Equal, 1);
  }
  lp.add_constraint(tree_row(columns.front()), Relation::LessEqual, 0);
  IncrementalLP incremental(std::move(lp));
  master = incremental.solution();
  while (true) {
    if (master.status != LPStatus::Optimal) throw std::logic_error("game master LP not optimal");
    for (std::size_t i = 0; i < n; ++i) {
      mu[i] = master.primal[i];
      if (!zero_error) nu[i] = master.primal[n + i];
    }
    z = master.primal[z_var];
    BestResponse br = best_response(f, mu, nu);
    sol.log.push_back({master.objective, br.objective, columns.size()});
    if (br.objective >= z) break;
    if (!add_column(columns, std::move(br.tree), f)) {
      throw std::logic_error("pricing returned a column already in the master");
    }
    master = incremental.add_constraint(tree_row(columns.back()), Relation::LessEqual, 0);
  }
  incremental.certify();

  sol.value = master.objective;
  sol.dual_value = master.objective;
  sol.hard_distribution = InputDistribution(mu);
  sol.error_prices.assign(n, Rational(0));
  if (!zero_error) {
    for (std::size_t i = 0; i < n; ++i) sol.error_prices[i] = *nu[i];
  }

  std::vector<Rational> expected_cost(n);
  std::vector<Rational> error(n);
  Rational weight_sum;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const Rational& lambda = master.dual[k + 1];
    if (sgn(lambda) == 0) continue;
    weight_sum += lambda;
    sol.trees.push_back(columns[k].tree);
    sol.mixture.push_back(lambda);
    for (std::size_t i = 0; i < n; ++i) {
      expected_cost[i] += lambda * columns[k].profile.cost[i];
      if (columns[k].profile.wrong[i]) error[i] += lambda;
    }
  }
  sol.primal_value = *std::max_element(expected_cost.begin(), expected_cost.end());
  sol.max_error = *std::max_element(error.begin(), error.end());

  // The adversary's guarantee: against (mu, nu) no tree does better than z,
  // so every epsilon-error algorithm pays at least z - eps*sum(nu) on mu.
  Rational nu_mass;
  for (const auto& v : sol.error_prices) nu_mass += v;
  Rational guarantee = sol.log.back().pricing_value - epsilon * nu_mass;
  sol.duality_verified = weight_sum == 1 && sol.primal_value == sol.value &&
                         guarantee == sol.value && sol.max_error <= epsilon;
  if (!sol.duality_verified) throw std::logic_error("game solution failed its duality audit");
  return sol;
}

WorstCaseResult solve_worstcase_depth(const QueryFunction& f, const Rational& epsilon) {
  const std::size_t n = f.domain_size();
  if (sgn(epsilon) < 0 || epsilon >= Rational(1, 2)) {
    throw PreconditionError("epsilon must lie in [0, 1/2)");
  }
  WorstCaseResult result;
  if (n == 0) {
    result.trees.push_back(DecisionTree::single_leaf(Label::boolean(false)));
    result.mixture.push_back(1);
    result.min_max_error_by_depth.push_back(0);
    return result;
  }
  const std::vector<Rational> no_cost(n);
  for (int d = 0; d <= f.arity(); ++d) {
    std::vector<Column> columns;
    {
      ErrorWeights uniform(n);
      for (auto& b : uniform) b = Rational(1, n);
      add_column(columns, best_response(f, no_cost, uniform, d).tree, f);
    }
    Rational best;
    // Adversary: maximise z subject to sum(nu) = 1 and z <= sum_x nu_x err_T(x).
    auto tree_row = [&](const Column& c) {
      std::vector<Rational> row(n + 1);
      row[n] = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (c.profile.wrong[i]) row[i] = -1;
      }
      return row;
    };
    LinearProgram lp(n + 1, Sense::Maximize);
    lp.set_bounds(n, std::nullopt, std::nullopt);
    lp.set_objective_coefficient(n, 1);
    std::vector<Rational> simplex(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i] = 1;
    lp.add_constraint(std::move(simplex), Relation::Equal, 1);
    lp.add_constraint(tree_row(columns.front()), Relation::LessEqual, 0);
    IncrementalLP incremental(std::move(lp));
    LPSolution master = incremental.solution();
    while (true) {
      if (master.status != LPStatus::Optimal) throw std::logic_error("depth master LP not optimal");
      ErrorWeights nu(n);
      for (std::size_t i = 0; i < n; ++i) nu[i] = master.primal[i];
      best = master.objective;
      BestResponse br = best_response(f, no_cost, nu, d);
      if (br.objective >= master.primal[n]) break;
      if (!add_column(columns, std::move(br.tree), f)) {
        throw std::logic_error("depth pricing returned a known column");
      }
      master = incremental.add_constraint(tree_row(columns.back()), Relation::LessEqual, 0);
    }
    incremental.certify();
    result.min_max_error_by_depth.push_back(best);
    if (best > epsilon) continue;

    // Witness: any mixture of the generated trees meeting the error budget.
    LinearProgram feas(columns.size(), Sense::Minimize);
    feas.add_constraint(std::vector<Rational>(columns.size(), Rational(1)), Relation::Equal, 1);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row(columns.size());
      for (std::size_t k = 0; k < columns.size(); ++k) row[k] = columns[k].profile.wrong[i] ? 1 : 0;
      feas.add_constraint(std::move(row), Relation::LessEqual, epsilon);
    }
    FeasibilityResult witness = check_feasible(feas);
    if (!witness.feasible) throw std::logic_error("depth witness LP infeasible");
    std::vector<Rational> error(n);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (sgn(witness.witness[k]) == 0) continue;
      result.trees.push_back(columns[k].tree);
      result.mixture.push_back(witness.witness[k]);
      for (std::size_t i = 0; i < n; ++i) {
        if (columns[k].profile.wrong[i]) error[i] += witness.witness[k];
      }
    }
    result.depth = d;
    result.max_error = *std::max_element(error.begin(), error.end());
    return result;
  }
  throw std::logic_error("no depth up to the arity meets the error budget");
}

SabotageMeasures sabotage_measures(const QueryFunction& f) {
  SabotageMeasures m;
  SabotagedFunction sab = sabotage(f);
  m.ds = det_complexity(sab.function).value;
  if (sab.function.domain_size() > 0) {
    m.rs_game = solve_expected_game(sab.function, 0);
    m.rs = m.rs_game->value;
  }
  SabotagedFunction usab = unique_sabotage(f);
  if (usab.function.domain_size() > 0) {
    m.rs_u_game = solve_expected_game(usab.function, 0);
    m.rs_u = m.rs_u_game->value;
  }
  return m;
}

}  // namespace qlab
