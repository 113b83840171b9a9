#pragma once

#include <vector>

#include "qlab/function.hpp"

namespace qlab {

// The sabotage problem of a Boolean-output function: inputs are partial
// assignments consistent with both a 0-input and a 1-input, with the unread
// positions marked by * (output 0) or + (output 1).
struct SabotagedFunction {
  QueryFunction function;
  QueryFunction base;
  std::vector<Word> star_inputs;    // P_f, sorted
  std::vector<Word> dagger_inputs;  // the + copy of P_f, sorted
};

SabotagedFunction sabotage(const QueryFunction& f);

/// Restriction of the sabotage problem to inputs with exactly one * or +.
/// The domain may be empty.
SabotagedFunction unique_sabotage(const QueryFunction& f);

Word swap_star_dagger(const Word& w);
int non_boolean_count(const Word& w);

/// f∘g on n·m bits: block i is fed to g and the n results to f. Both
/// functions must read Boolean inputs and g must have Boolean output.
QueryFunction compose(const QueryFunction& f, const QueryFunction& g);

/// m independent copies of f with tuple output.
QueryFunction direct_sum(const QueryFunction& f, int m);

/// Largest c with c + 2^c <= m.
int index_address_bits(int m);

/// Ind_m: the first c bits address one of the next 2^c bits; any trailing
/// bits are ignored, so the function is total.
QueryFunction index_function(int m);

/// Index function on c + 2^c bits with f composed into the c address bits.
QueryFunction indexed_direct_sum(const QueryFunction& f, int c);

}  // namespace qlab
