#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/family.hpp"
#include "qlab/measures.hpp"

namespace qlab {

struct CheckOutcome {
  bool pass = true;
  std::string detail;  // the values compared, e.g. "RS=3/2 RC=2"
};

struct CheckContext {
  MeasureEngine& engine;
  std::vector<Rational> epsilons;  // for checks parameterised by an error level
};

// A predicate over exact measure values. Pair checks take (outer, inner).
struct TheoremCheck {
  std::string id;
  std::string statement;
  bool on_pairs = false;
  std::vector<Rational> default_epsilons;
  std::function<CheckOutcome(CheckContext&, const QueryFunction&)> single;
  std::function<CheckOutcome(CheckContext&, const QueryFunction&, const QueryFunction&)> pair;
};

const std::vector<TheoremCheck>& theorem_registry();

/// Throws ParseError for unknown ids.
const TheoremCheck& find_theorem(std::string_view id);

struct CheckFailure {
  std::string function;  // encoding; pairs read "<outer> o <inner>"
  std::string detail;
};

struct TheoremVerdict {
  std::string id;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::vector<CheckFailure> failures;  // in family order

  bool pass() const { return passed == checked; }
};

/// Evaluates `check` on every member of `family`. Verdicts do not depend on
/// `jobs`. Throws PreconditionError when the family shape (functions or
/// pairs) does not match the check.
TheoremVerdict run_check(const TheoremCheck& check, const Family& family, MeasureEngine& engine,
                         int jobs = 1, std::optional<std::vector<Rational>> epsilons = std::nullopt);

}  // namespace qlab
