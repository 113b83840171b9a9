#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qlab {

// Error kinds surfaced to callers. The CLI maps each to an exit code.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UndefinedInput : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Ordered 0 < 1 < * < +. The dagger is written `+` in every textual format.
enum class Symbol : std::uint8_t { Zero = 0, One = 1, Star = 2, Dagger = 3 };

inline constexpr int kMaxSymbols = 4;

char to_char(Symbol s);
std::optional<Symbol> symbol_from_char(char c);
inline bool is_boolean(Symbol s) { return s == Symbol::Zero || s == Symbol::One; }

enum class Alphabet : std::uint8_t { Boolean, Sabotage };

inline int alphabet_size(Alphabet a) { return a == Alphabet::Boolean ? 2 : 4; }

using Word = std::vector<Symbol>;

std::string word_to_string(const Word& w);
Word word_from_string(std::string_view text);

// Output label. A Boolean label has a single part; direct sums produce tuples.
struct Label {
  std::vector<std::uint8_t> parts;

  static Label boolean(bool b) { return Label{{static_cast<std::uint8_t>(b)}}; }
  bool is_boolean() const { return parts.size() == 1 && parts[0] <= 1; }
  bool as_bool() const;

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;
};

std::string label_to_string(const Label& l);
Label label_from_string(std::string_view text);

// A finite function with an explicit domain. Domain words are kept sorted in
// lexicographic symbol order, so two equal functions have identical storage.
class QueryFunction {
 public:
  QueryFunction(int arity, Alphabet alphabet,
                std::vector<std::pair<Word, Label>> entries);

  int arity() const { return arity_; }
  Alphabet alphabet() const { return alphabet_; }
  std::size_t domain_size() const { return domain_.size(); }
  std::span<const Word> domain() const { return domain_; }
  const Word& input(std::size_t idx) const { return domain_[idx]; }
  const Label& value(std::size_t idx) const { return values_[idx]; }
  std::optional<std::size_t> index_of(const Word& w) const;

  /// Throws UndefinedInput when `x` lies outside the domain and
  /// PreconditionError when it is malformed for this function.
  const Label& evaluate(const Word& x) const;

  bool boolean_output() const;
  bool is_total() const;
  bool is_constant() const;

  bool operator==(const QueryFunction&) const = default;

 private:
  int arity_;
  Alphabet alphabet_;
  std::vector<Word> domain_;
  std::vector<Label> values_;
};

// Build a Boolean-alphabet function from 2^n truth-table cells (lexicographic
// input order, std::nullopt for inputs outside the domain).
QueryFunction from_truth_table(int arity,
                               const std::vector<std::optional<bool>>& cells);

/// Accepts `tt:<n>:<cells>` and `ext:<n>:{<word>=<label>,...}`.
QueryFunction parse_function(std::string_view text);

/// Deterministic literal; parse_function inverts it for nonempty domains.
std::string canonical_encoding(const QueryFunction& f);

// Fixed-width set of domain indices.
class DomainSet {
 public:
  DomainSet() = default;
  explicit DomainSet(std::size_t size, bool full = false);

  std::size_t universe() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;
  bool empty() const;
  std::vector<std::size_t> members() const;

  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        int b = __builtin_ctzll(bits);
        fn(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  DomainSet operator&(const DomainSet& o) const;
  bool is_subset_of(const DomainSet& o) const;
  bool operator==(const DomainSet&) const = default;
  std::size_t hash() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct DomainSetHash {
  std::size_t operator()(const DomainSet& s) const { return s.hash(); }
};

// Positions are 0-based internally; user-facing output adds one.
class KnowledgeState {
 public:
  explicit KnowledgeState(int arity) : entries_(static_cast<std::size_t>(arity)) {}

  int arity() const { return static_cast<int>(entries_.size()); }
  const std::optional<Symbol>& at(int pos) const { return entries_[static_cast<std::size_t>(pos)]; }
  int queries() const { return queries_; }

  /// Returns a new state with `pos` revealed; revealing twice is an error.
  KnowledgeState reveal(int pos, Symbol s) const;

  /// Parses e.g. "0?" or "?*" where `?` marks an unqueried position.
  static KnowledgeState from_string(std::string_view pattern);

 private:
  std::vector<std::optional<Symbol>> entries_;
  int queries_ = 0;
};

DomainSet consistent_inputs(const QueryFunction& f, const KnowledgeState& s);
bool is_consistent(const QueryFunction& f, const KnowledgeState& s);

/// Throws PreconditionError when no domain input is consistent with `s`.
bool is_certificate(const QueryFunction& f, const KnowledgeState& s);

// Precomputed masks: for every position and symbol, the domain inputs carrying
// that symbol there. Shared by the search engines.
class PositionMasks {
 public:
  explicit PositionMasks(const QueryFunction& f);
  const DomainSet& mask(int pos, Symbol s) const {
    return masks_[static_cast<std::size_t>(pos) * kMaxSymbols + static_cast<std::size_t>(s)];
  }

 private:
  std::vector<DomainSet> masks_;
};

bool all_same_label(const QueryFunction& f, const DomainSet& s);

}  // namespace qlab
