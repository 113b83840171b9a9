#include "qlab/lp.hpp"

#include <algorithm>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "small_rational.hpp"

namespace qlab {

LinearProgram::LinearProgram(std::size_t num_variables, Sense sense)
    : sense_(sense), objective_(num_variables), bounds_(num_variables) {}

void LinearProgram::set_objective(std::vector<Rational> coefficients) {
  if (coefficients.size() != objective_.size()) {
    throw std::invalid_argument("objective length does not match variable count");
  }
  objective_ = std::move(coefficients);
}

void LinearProgram::set_objective_coefficient(std::size_t var, Rational c) {
  objective_.at(var) = std::move(c);
}

std::size_t LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation,
                                          Rational rhs) {
  if (coefficients.size() != objective_.size()) {
    throw std::invalid_argument("constraint length does not match variable count");
  }
  constraints_.push_back({std::move(coefficients), relation, std::move(rhs)});
  return constraints_.size() - 1;
}

void LinearProgram::set_bounds(std::size_t var, std::optional<Rational> lower,
                               std::optional<Rational> upper) {
  if (lower && upper && *lower > *upper) throw std::invalid_argument("empty variable bounds");
  bounds_.at(var) = {std::move(lower), std::move(upper)};
}

const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

// Internal standard form: minimize c.x subject to A x = b, x >= 0, solved
// with a dense tableau. Phase 1 and phase 2 use Bland's rule; rows added
// afterwards are absorbed by dual simplex pivots with the lowest-index rule.
using Num = detail::SmallRational;

class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram& lp) { build(lp); }

  LPSolution solve(bool feasibility_only);
  LPSolution add_row(const std::vector<Rational>& coefficients, Relation relation,
                     const Rational& rhs);

 private:
  struct VarMap {
    // x_orig = offset + sum coeff * x_internal[col]
    Rational offset;
    std::vector<std::pair<std::size_t, int>> terms;
  };

  void build(const LinearProgram& lp);
  void pivot(std::size_t row, std::size_t col);
  void load_costs(const std::vector<Num>& cost);
  bool primal_iterate(bool allow_artificial);  // false when unbounded
  bool dual_iterate();                         // false when infeasible
  std::vector<Num> internal_primal() const;
  std::vector<Rational> map_back(const std::vector<Num>& x) const;
  void verify(const std::vector<Num>& x, const std::vector<Num>& y) const;
  LPSolution extract(bool check);

 public:
  void certify();

 private:
  std::size_t append_column(bool artificial);

  Sense sense_ = Sense::Minimize;
  std::vector<Rational> objective_;  // caller's objective
  std::vector<VarMap> var_map_;
  std::size_t structural_ = 0;
  std::size_t columns_ = 0;
  std::vector<bool> artificial_;
  using SparseRow = std::vector<std::pair<std::size_t, Num>>;
  static SparseRow sparse(const std::vector<Num>& row);
  std::vector<SparseRow> a_;  // internal rows as built
  std::vector<Num> b_;
  std::vector<int> row_sign_;            // +1 or -1 applied to the source row
  std::vector<std::size_t> init_basic_;  // identity column of each row
  std::vector<std::size_t> constraint_row_;  // caller constraint -> internal row
  std::vector<Num> cost_;                // phase-2 internal costs
  Rational cost_offset_;

  std::vector<std::vector<Num>> t_;  // B^-1 A
  std::vector<Num> rhs_;
  std::vector<Num> reduced_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
  bool optimal_ = false;
};

void SimplexTableau::build(const LinearProgram& lp) {
  sense_ = lp.sense();
  objective_ = lp.objective();
  const std::size_t n = lp.num_variables();
  var_map_.resize(n);
  struct BoundRow {
    std::size_t col;
    Rational rhs;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& bd = lp.bounds()[j];
    VarMap& vm = var_map_[j];
    if (bd.lower) {
      vm.offset = *bd.lower;
      vm.terms.push_back({structural_, +1});
      if (bd.upper) bound_rows.push_back({structural_, *bd.upper - *bd.lower});
      ++structural_;
    } else if (bd.upper) {
      vm.offset = *bd.upper;
      vm.terms.push_back({structural_++, -1});
    } else {
      vm.terms.push_back({structural_++, +1});
      vm.terms.push_back({structural_++, -1});
    }
  }

  struct Row {
    std::vector<Rational> coeff;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (const auto& c : lp.constraints()) {
    Row r{std::vector<Rational>(structural_), c.relation, c.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(c.coefficients[j]) == 0) continue;
      r.rhs -= c.coefficients[j] * var_map_[j].offset;
      for (auto [col, s] : var_map_[j].terms) r.coeff[col] += s * c.coefficients[j];
    }
    constraint_row_.push_back(rows.size());
    rows.push_back(std::move(r));
  }
  for (const auto& br : bound_rows) {
    Row r{std::vector<Rational>(structural_), Relation::LessEqual, br.rhs};
    r.coeff[br.col] = 1;
    rows.push_back(std::move(r));
  }

  const std::size_t m = rows.size();
  row_sign_.assign(m, 1);
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Row& r = rows[i];
    if (sgn(r.rhs) < 0) {
      for (auto& v : r.coeff) v = -v;
      r.rhs = -r.rhs;
      if (r.rel == Relation::LessEqual) r.rel = Relation::GreaterEqual;
      else if (r.rel == Relation::GreaterEqual) r.rel = Relation::LessEqual;
      row_sign_[i] = -1;
    }
    if (r.rel != Relation::Equal) ++slacks;
    if (r.rel != Relation::LessEqual) ++artificials;
  }
  const std::size_t first_artificial = structural_ + slacks;
  columns_ = first_artificial + artificials;
  artificial_.assign(columns_, false);
  for (std::size_t j = first_artificial; j < columns_; ++j) artificial_[j] = true;

  std::vector<std::vector<Num>> dense(m, std::vector<Num>(columns_));
  b_.resize(m);
  init_basic_.resize(m);
  std::size_t next_slack = structural_;
  std::size_t next_art = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < structural_; ++j) {
      if (sgn(rows[i].coeff[j]) != 0) dense[i][j] = Num(rows[i].coeff[j]);
    }
    b_[i] = Num(rows[i].rhs);
    switch (rows[i].rel) {
      case Relation::LessEqual:
        dense[i][next_slack] = 1;
        init_basic_[i] = next_slack++;
        break;
      case Relation::GreaterEqual:
        dense[i][next_slack++] = -1;
        dense[i][next_art] = 1;
        init_basic_[i] = next_art++;
        break;
      case Relation::Equal:
        dense[i][next_art] = 1;
        init_basic_[i] = next_art++;
        break;
    }
  }

  std::vector<Rational> cost(columns_);
  const int dir = sense_ == Sense::Minimize ? 1 : -1;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& c = objective_[j];
    if (sgn(c) == 0) continue;
    cost_offset_ += dir * c * var_map_[j].offset;
    for (auto [col, s] : var_map_[j].terms) cost[col] += dir * s * c;
  }
  for (const auto& c : cost) cost_.emplace_back(c);

  for (const auto& row : dense) a_.push_back(sparse(row));
  t_ = std::move(dense);
  rhs_ = b_;
  basis_ = init_basic_;
}

void SimplexTableau::pivot(std::size_t row, std::size_t col) {
  ++pivots_;
  auto& prow = t_[row];
  const Num inv = prow[col].inverse();
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < columns_; ++j) {
    if (sgn(prow[j]) != 0) {
      if (j != col) prow[j] *= inv;
      nz.push_back(j);
    }
  }
  prow[col] = 1;
  rhs_[row] *= inv;
  Num scratch;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (i == row || sgn(t_[i][col]) == 0) continue;
    auto& r = t_[i];
    const Num factor = r[col];
    for (std::size_t j : nz) {
      scratch = factor * prow[j];
      r[j] -= scratch;
    }
    scratch = factor * rhs_[row];
    rhs_[i] -= scratch;
  }
  if (sgn(reduced_[col]) != 0) {
    const Num factor = reduced_[col];
    for (std::size_t j : nz) {
      scratch = factor * prow[j];
      reduced_[j] -= scratch;
    }
  }
  basis_[row] = col;
}

void SimplexTableau::load_costs(const std::vector<Num>& cost) {
  reduced_ = cost;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    const Num& cb = cost[basis_[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < columns_; ++j) {
      if (sgn(t_[i][j]) != 0) reduced_[j] -= cb * t_[i][j];
    }
  }
}

bool SimplexTableau::primal_iterate(bool allow_artificial) {
  while (true) {
    std::size_t enter = columns_;
    for (std::size_t j = 0; j < columns_; ++j) {
      if (!allow_artificial && artificial_[j]) continue;
      if (sgn(reduced_[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == columns_) return true;
    std::size_t leave = t_.size();
    Num best;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (sgn(t_[i][enter]) <= 0) continue;
      Num ratio = rhs_[i] / t_[i][enter];
      if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == t_.size()) return false;
    pivot(leave, enter);
  }
}

bool SimplexTableau::dual_iterate() {
  while (true) {
    std::size_t leave = t_.size();
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (sgn(rhs_[i]) < 0 && (leave == t_.size() || basis_[i] < basis_[leave])) leave = i;
    }
    if (leave == t_.size()) return true;
    std::size_t enter = columns_;
    Num best;
    for (std::size_t j = 0; j < columns_; ++j) {
      if (artificial_[j] || sgn(t_[leave][j]) >= 0) continue;
      Num ratio = -(reduced_[j] / t_[leave][j]);
      if (enter == columns_ || ratio < best) {
        enter = j;
        best = std::move(ratio);
      }
    }
    if (enter == columns_) return false;
    pivot(leave, enter);
  }
}

std::vector<Num> SimplexTableau::internal_primal() const {
  std::vector<Num> x(columns_);
  for (std::size_t i = 0; i < basis_.size(); ++i) x[basis_[i]] = rhs_[i];
  return x;
}

std::vector<Rational> SimplexTableau::map_back(const std::vector<Num>& x) const {
  std::vector<Rational> out(var_map_.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = var_map_[j].offset;
    for (auto [col, s] : var_map_[j].terms) out[j] += s * x[col].to_rational();
  }
  return out;
}

SimplexTableau::SparseRow SimplexTableau::sparse(const std::vector<Num>& row) {
  SparseRow out;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (sgn(row[j]) != 0) out.emplace_back(j, row[j]);
  }
  return out;
}

void SimplexTableau::verify(const std::vector<Num>& x, const std::vector<Num>& y) const {
  std::vector<Num> d = cost_;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    Num lhs;
    for (const auto& [j, v] : a_[i]) {
      if (sgn(x[j]) != 0) lhs += v * x[j];
      if (sgn(y[i]) != 0) d[j] -= y[i] * v;
    }
    if (lhs != b_[i]) throw std::logic_error("simplex produced an infeasible point");
  }
  for (std::size_t j = 0; j < columns_; ++j) {
    if (sgn(x[j]) < 0) throw std::logic_error("simplex produced a negative variable");
    if (artificial_[j]) {
      if (sgn(x[j]) != 0) throw std::logic_error("artificial variable left positive");
      continue;
    }
    if (sgn(d[j]) < 0) throw std::logic_error("simplex dual is infeasible");
  }
  Num primal;
  Num dual;
  for (std::size_t j = 0; j < columns_; ++j) primal += cost_[j] * x[j];
  for (std::size_t i = 0; i < b_.size(); ++i) dual += y[i] * b_[i];
  if (primal != dual) throw std::logic_error("simplex primal and dual objectives differ");
}

LPSolution SimplexTableau::extract(bool check) {
  // y_i = c_B B^-1 e_i, read off the reduced cost of row i's identity column.
  std::vector<Num> x = internal_primal();
  std::vector<Num> y(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) y[i] = cost_[init_basic_[i]] - reduced_[init_basic_[i]];
  if (check) verify(x, y);

  const int dir = sense_ == Sense::Minimize ? 1 : -1;
  LPSolution sol;
  sol.status = LPStatus::Optimal;
  sol.primal = map_back(x);
  sol.dual.resize(constraint_row_.size());
  Rational internal_dual_obj;
  for (std::size_t i = 0; i < a_.size(); ++i) internal_dual_obj += (y[i] * b_[i]).to_rational();
  for (std::size_t k = 0; k < constraint_row_.size(); ++k) {
    std::size_t i = constraint_row_[k];
    sol.dual[k] = dir * row_sign_[i] * y[i].to_rational();
  }
  sol.dual_objective = dir * (internal_dual_obj + cost_offset_);
  for (std::size_t j = 0; j < sol.primal.size(); ++j) sol.objective += objective_[j] * sol.primal[j];
  if (sol.objective != sol.dual_objective) {
    throw std::logic_error("objective mapping inconsistent after solve");
  }
  sol.pivots = pivots_;
  return sol;
}

LPSolution SimplexTableau::solve(bool feasibility_only) {
  LPSolution sol;
  // Phase 1: minimise the sum of artificial variables.
  std::vector<Num> phase1(columns_);
  for (std::size_t j = 0; j < columns_; ++j) {
    if (artificial_[j]) phase1[j] = 1;
  }
  load_costs(phase1);
  primal_iterate(true);
  Num infeasibility;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (artificial_[basis_[i]]) infeasibility += rhs_[i];
  }
  if (sgn(infeasibility) > 0) {
    sol.status = LPStatus::Infeasible;
    sol.pivots = pivots_;
    return sol;
  }
  // Drive zero-level artificials out of the basis where possible; rows with no
  // non-artificial entry are redundant and keep their artificial at zero.
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (!artificial_[basis_[i]]) continue;
    for (std::size_t j = 0; j < columns_; ++j) {
      if (!artificial_[j] && sgn(t_[i][j]) != 0) {
        pivot(i, j);
        break;
      }
    }
  }

  if (feasibility_only) {
    sol.status = LPStatus::Optimal;
    sol.primal = map_back(internal_primal());
    sol.pivots = pivots_;
    return sol;
  }

  load_costs(cost_);
  if (!primal_iterate(false)) {
    sol.status = LPStatus::Unbounded;
    sol.pivots = pivots_;
    return sol;
  }
  optimal_ = true;
  return extract(true);
}

std::size_t SimplexTableau::append_column(bool artificial) {
  for (auto& r : t_) r.emplace_back(0);
  cost_.emplace_back(0);
  reduced_.emplace_back(0);
  artificial_.push_back(artificial);
  return columns_++;
}

LPSolution SimplexTableau::add_row(const std::vector<Rational>& coefficients, Relation relation,
                                   const Rational& rhs) {
  if (!optimal_) throw std::logic_error("rows can only be added to an optimal tableau");
  if (relation == Relation::Equal) throw std::invalid_argument("incremental rows must be inequalities");
  if (coefficients.size() != var_map_.size()) {
    throw std::invalid_argument("constraint length does not match variable count");
  }
  const int sign = relation == Relation::LessEqual ? 1 : -1;
  const std::size_t slack = append_column(false);
  std::vector<Rational> row(columns_);
  Rational b = sign * rhs;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (sgn(coefficients[j]) == 0) continue;
    Rational a = sign * coefficients[j];
    b -= a * var_map_[j].offset;
    for (auto [col, s] : var_map_[j].terms) row[col] += s * a;
  }
  std::vector<Num> nrow(columns_);
  for (std::size_t j = 0; j < columns_; ++j) {
    if (sgn(row[j]) != 0) nrow[j] = Num(row[j]);
  }
  nrow[slack] = 1;
  const Num nb(b);

  // Express the row in the current basis.
  std::vector<Num> trow = nrow;
  Num trhs = nb;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Num& factor = nrow[basis_[k]];
    if (sgn(factor) == 0) continue;
    for (std::size_t j = 0; j < columns_; ++j) {
      if (sgn(t_[k][j]) != 0) trow[j] -= factor * t_[k][j];
    }
    trhs -= factor * rhs_[k];
  }
  a_.push_back(sparse(nrow));
  b_.push_back(nb);
  row_sign_.push_back(sign);
  init_basic_.push_back(slack);
  constraint_row_.push_back(a_.size() - 1);
  t_.push_back(std::move(trow));
  rhs_.push_back(trhs);
  basis_.push_back(slack);

  if (!dual_iterate()) {
    optimal_ = false;
    LPSolution sol;
    sol.status = LPStatus::Infeasible;
    sol.pivots = pivots_;
    return sol;
  }
  return extract(false);
}

void SimplexTableau::certify() {
  if (!optimal_) throw std::logic_error("no optimum to certify");
  extract(true);
}

LPSolution solve_lp(const LinearProgram& lp) {
  SimplexTableau t(lp);
  return t.solve(false);
}

FeasibilityResult check_feasible(const LinearProgram& lp) {
  SimplexTableau t(lp);
  LPSolution s = t.solve(true);
  return {s.status == LPStatus::Optimal, std::move(s.primal)};
}

IncrementalLP::IncrementalLP(LinearProgram lp)
    : lp_(std::move(lp)), tableau_(std::make_unique<SimplexTableau>(lp_)) {
  solution_ = tableau_->solve(false);
}

IncrementalLP::~IncrementalLP() = default;
IncrementalLP::IncrementalLP(IncrementalLP&&) noexcept = default;
IncrementalLP& IncrementalLP::operator=(IncrementalLP&&) noexcept = default;

const LPSolution& IncrementalLP::add_constraint(std::vector<Rational> coefficients,
                                                Relation relation, Rational rhs) {
  if (solution_.status != LPStatus::Optimal) {
    throw std::logic_error("cannot extend a program without an optimum");
  }
  solution_ = tableau_->add_row(coefficients, relation, rhs);
  lp_.add_constraint(std::move(coefficients), relation, std::move(rhs));
  return solution_;
}

void IncrementalLP::certify() const {
  if (solution_.status == LPStatus::Optimal) tableau_->certify();
}

}  // namespace qlab
