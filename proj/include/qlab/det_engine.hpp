#pragma once

#include <cstdint>
#include <vector>

#include "qlab/decision_tree.hpp"
#include "qlab/function.hpp"
#include "qlab/rational.hpp"

namespace qlab {

struct DetResult {
  int value = 0;
  DecisionTree tree;  // an optimal tree; lowest position wins ties
};

/// Exact D(f) by minimax over knowledge states, memoised on the consistent
/// input set. An empty domain has complexity 0.
DetResult det_complexity(const QueryFunction& f);

/// D(f_sab), which equals D(f).
int det_sabotage_complexity(const QueryFunction& f);

struct PerInputMeasure {
  int value = 0;
  std::vector<int> per_input;  // indexed like the domain
};

/// C_x is the fewest positions whose values at x force the output f(x).
PerInputMeasure certificate_complexity(const QueryFunction& f);
int certificate_size(const QueryFunction& f, std::size_t input);

// Blocks are position bitmasks (bit i = position i, 0-based).
using Block = std::uint32_t;

struct SensitiveBlockSet {
  std::size_t input = 0;
  std::vector<Block> blocks;    // every sensitive block, ascending
  std::vector<bool> minimal;    // parallel to `blocks`
  std::vector<Block> minimal_blocks() const;
};

/// Requires a Boolean input alphabet. Every listed block B satisfies
/// x^B in Dom(f) and f(x^B) != f(x), checked by direct evaluation.
SensitiveBlockSet sensitive_blocks(const QueryFunction& f, std::size_t input);

/// bs_x via exhaustive packing of minimal sensitive blocks.
PerInputMeasure block_sensitivity(const QueryFunction& f);

/// Largest number of pairwise disjoint blocks in `blocks`.
int max_disjoint_packing(const std::vector<Block>& blocks);

struct FractionalResult {
  Rational value;
  std::vector<Rational> per_input;
  std::size_t argmax = 0;
  SensitiveBlockSet blocks;      // blocks at the maximising input
  std::vector<Rational> weights;  // optimal LP weights for those blocks
};

/// RC_x as the fractional packing LP over the sensitive blocks of x.
FractionalResult fractional_block_sensitivity(const QueryFunction& f);
Rational fractional_block_sensitivity_at(const QueryFunction& f, std::size_t input,
                                         std::vector<Rational>* weights = nullptr);

}  // namespace qlab
