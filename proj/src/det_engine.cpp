#include "qlab/det_engine.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "qlab/constructions.hpp"
#include "qlab/lp.hpp"

namespace qlab {

namespace {

class MinimaxSearch {
 public:
  explicit MinimaxSearch(const QueryFunction& f) : f_(f), masks_(f) {}

  int value(const DomainSet& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second.value;
    Entry e;
    if (all_same_label(f_, s)) {
      e.value = 0;
    } else {
      e.value = -1;
      for (int p = 0; p < f_.arity(); ++p) {
        std::array<DomainSet, kMaxSymbols> children;
        int parts = 0;
        for (int a = 0; a < kMaxSymbols; ++a) {
          children[static_cast<std::size_t>(a)] = s & masks_.mask(p, static_cast<Symbol>(a));
          if (!children[static_cast<std::size_t>(a)].empty()) ++parts;
        }
        if (parts < 2) continue;  // reveals nothing
        int worst = -1;
        for (const auto& child : children) {
          if (!child.empty()) worst = std::max(worst, value(child));
        }
        if (e.value < 0 || worst + 1 < e.value) {
          e.value = worst + 1;
          e.position = p;
        }
      }
      if (e.value < 0) throw std::logic_error("no query separates distinct domain inputs");
    }
    memo_.emplace(s, e);
    return e.value;
  }

  int build(const DomainSet& s, DecisionTree& tree) {
    const Entry& e = memo_.at(s);
    if (e.position < 0) {
      Label l = Label::boolean(false);
      if (!s.empty()) l = f_.value(s.members().front());
      return tree.add_leaf(l);
    }
    std::array<int, kMaxSymbols> children{-1, -1, -1, -1};
    for (int a = 0; a < kMaxSymbols; ++a) {
      DomainSet child = s & masks_.mask(e.position, static_cast<Symbol>(a));
      if (!child.empty()) children[static_cast<std::size_t>(a)] = build(child, tree);
    }
    return tree.add_query(e.position, children);
  }

 private:
  struct Entry {
    int value = 0;
    int position = -1;
  };
  const QueryFunction& f_;
  PositionMasks masks_;
  std::unordered_map<DomainSet, Entry, DomainSetHash> memo_;
};

void require_boolean_inputs(const QueryFunction& f) {
  if (f.alphabet() != Alphabet::Boolean) {
    throw PreconditionError("block measures require a Boolean input alphabet");
  }
  if (f.arity() > 20) throw LimitExceeded("arity too large for block enumeration");
}

Word flip(const Word& x, Block b) {
  Word y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if ((b >> i) & 1U) y[i] = y[i] == Symbol::Zero ? Symbol::One : Symbol::Zero;
  }
  return y;
}

}  // namespace

DetResult det_complexity(const QueryFunction& f) {
  DetResult r;
  DomainSet all(f.domain_size(), true);
  MinimaxSearch search(f);
  r.value = search.value(all);
  r.tree.set_root(search.build(all, r.tree));
  return r;
}

int det_sabotage_complexity(const QueryFunction& f) {
  return det_complexity(sabotage(f).function).value;
}

int certificate_size(const QueryFunction& f, std::size_t input) {
  const int n = f.arity();
  if (n > 20) throw LimitExceeded("arity too large for certificate search");
  const Word& x = f.input(input);
  const Label& fx = f.value(input);
  int best = n;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool forced = true;
    for (std::size_t j = 0; j < f.domain_size() && forced; ++j) {
      if (f.value(j) == fx) continue;
      const Word& y = f.input(j);
      bool agrees = true;
      for (int p = 0; p < n && agrees; ++p) {
        if ((mask >> p) & 1U) agrees = y[static_cast<std::size_t>(p)] == x[static_cast<std::size_t>(p)];
      }
      forced = !agrees;
    }
    if (forced) best = size;
  }
  return best;
}

PerInputMeasure certificate_complexity(const QueryFunction& f) {
  PerInputMeasure m;
  m.per_input.resize(f.domain_size());
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    m.per_input[i] = certificate_size(f, i);
    m.value = std::max(m.value, m.per_input[i]);
  }
  return m;
}

std::vector<Block> SensitiveBlockSet::minimal_blocks() const {
  std::vector<Block> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (minimal[i]) out.push_back(blocks[i]);
  }
  return out;
}

SensitiveBlockSet sensitive_blocks(const QueryFunction& f, std::size_t input) {
  require_boolean_inputs(f);
  SensitiveBlockSet s;
  s.input = input;
  const Word& x = f.input(input);
  const Label& fx = f.value(input);
  for (Block b = 1; b < (Block{1} << f.arity()); ++b) {
    auto idx = f.index_of(flip(x, b));
    if (idx && f.value(*idx) != fx) s.blocks.push_back(b);
  }
  for (Block b : s.blocks) {
    bool minimal = std::none_of(s.blocks.begin(), s.blocks.end(), [b](Block c) {
      return c != b && (c & b) == c;
    });
    s.minimal.push_back(minimal);
  }
  return s;
}

int max_disjoint_packing(const std::vector<Block>& blocks) {
  int best = 0;
  auto rec = [&](auto&& self, std::size_t from, Block used, int count) -> void {
    best = std::max(best, count);
    for (std::size_t i = from; i < blocks.size(); ++i) {
      if ((blocks[i] & used) == 0) self(self, i + 1, used | blocks[i], count + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return best;
}

PerInputMeasure block_sensitivity(const QueryFunction& f) {
  PerInputMeasure m;
  m.per_input.resize(f.domain_size());
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    m.per_input[i] = max_disjoint_packing(sensitive_blocks(f, i).minimal_blocks());
    m.value = std::max(m.value, m.per_input[i]);
  }
  return m;
}

Rational fractional_block_sensitivity_at(const QueryFunction& f, std::size_t input,
                                         std::vector<Rational>* weights) {
  SensitiveBlockSet s = sensitive_blocks(f, input);
  if (s.blocks.empty()) {
    if (weights) weights->clear();
    return 0;
  }
  LinearProgram lp(s.blocks.size(), Sense::Maximize);
  lp.set_objective(std::vector<Rational>(s.blocks.size(), Rational(1)));
  for (int p = 0; p < f.arity(); ++p) {
    std::vector<Rational> row(s.blocks.size());
    bool any = false;
    for (std::size_t j = 0; j < s.blocks.size(); ++j) {
      if ((s.blocks[j] >> p) & 1U) {
        row[j] = 1;
        any = true;
      }
    }
    if (any) lp.add_constraint(std::move(row), Relation::LessEqual, 1);
  }
  LPSolution sol = solve_lp(lp);
  if (sol.status != LPStatus::Optimal) throw std::logic_error("fractional packing LP not optimal");
  if (weights) *weights = sol.primal;
  return sol.objective;
}

FractionalResult fractional_block_sensitivity(const QueryFunction& f) {
  FractionalResult r;
  r.per_input.resize(f.domain_size());
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    std::vector<Rational> w;
    r.per_input[i] = fractional_block_sensitivity_at(f, i, &w);
    if (i == 0 || r.per_input[i] > r.value) {
      r.value = r.per_input[i];
      r.argmax = i;
      r.weights = std::move(w);
    }
  }
  if (f.domain_size() > 0) r.blocks = sensitive_blocks(f, r.argmax);
  return r;
}

}  // namespace qlab
