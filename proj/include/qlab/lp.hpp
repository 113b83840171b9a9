#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "qlab/rational.hpp"

namespace qlab {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// Bounds default to [0, +inf). std::nullopt means unbounded on that side.
struct VariableBounds {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
};

class LinearProgram {
 public:
  LinearProgram(std::size_t num_variables, Sense sense);

  std::size_t num_variables() const { return objective_.size(); }
  Sense sense() const { return sense_; }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<VariableBounds>& bounds() const { return bounds_; }

  void set_objective(std::vector<Rational> coefficients);
  void set_objective_coefficient(std::size_t var, Rational c);
  std::size_t add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);
  void set_bounds(std::size_t var, std::optional<Rational> lower, std::optional<Rational> upper);

 private:
  Sense sense_;
  std::vector<Rational> objective_;
  std::vector<Constraint> constraints_;
  std::vector<VariableBounds> bounds_;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus s);

// On Optimal, `dual[i]` is the shadow price of constraint i: the rate at
// which the optimal objective moves with its right-hand side. Hence the
// objective equals sum_i dual[i] * rhs[i] plus the contribution of finite
// variable bounds, and dual signs follow the usual conventions (a maximize
// problem has dual >= 0 on <= rows, a minimize problem has dual >= 0 on >=
// rows). The solver checks primal feasibility, dual feasibility and equality
// of the two objectives exactly before returning.
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective;
  Rational dual_objective;
  std::size_t pivots = 0;
};

LPSolution solve_lp(const LinearProgram& lp);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> witness;
};

/// Ignores the objective; returns an exact point satisfying every constraint.
FeasibilityResult check_feasible(const LinearProgram& lp);

class SimplexTableau;

// A linear program that grows by inequality rows. Each added row is brought
// into the current optimal tableau and the optimum is restored with dual
// simplex pivots (lowest-index rule), so a cutting-plane loop never restarts
// from scratch. The initial optimum is checked like solve_lp; later ones are
// checked only by certify(), which throws std::logic_error on failure.
class IncrementalLP {
 public:
  explicit IncrementalLP(LinearProgram lp);
  ~IncrementalLP();
  IncrementalLP(IncrementalLP&&) noexcept;
  IncrementalLP& operator=(IncrementalLP&&) noexcept;

  const LPSolution& solution() const { return solution_; }
  const LinearProgram& program() const { return lp_; }

  /// Only LessEqual and GreaterEqual rows; returns the re-optimised solution.
  const LPSolution& add_constraint(std::vector<Rational> coefficients, Relation relation,
                                   Rational rhs);
  void certify() const;

 private:
  LinearProgram lp_;
  std::unique_ptr<SimplexTableau> tableau_;
  LPSolution solution_;
};

}  // namespace qlab
