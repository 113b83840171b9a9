#include "qlab/enumerate.hpp"

#include <bit>

namespace qlab {

namespace {

template <class Pred>
QueryFunction tabulate(int n, Pred pred) {
  std::size_t cells = std::size_t{1} << n;
  std::vector<std::optional<bool>> table(cells);
  for (std::size_t c = 0; c < cells; ++c) table[c] = pred(c);
  return from_truth_table(n, table);
}

}  // namespace

QueryFunction total_from_index(int n, std::uint64_t index) {
  std::size_t cells = std::size_t{1} << n;
  std::vector<std::optional<bool>> table(cells);
  for (std::size_t c = 0; c < cells; ++c) table[c] = ((index >> (cells - 1 - c)) & 1U) != 0;
  return from_truth_table(n, table);
}

FunctionStream::FunctionStream(FunctionFamily family, int arity_limit)
    : family_(std::move(family)) {
  switch (family_.kind) {
    case FunctionFamily::Kind::AllTotal:
    case FunctionFamily::Kind::NonconstantTotal:
      if (family_.arity < 1 || family_.arity > arity_limit || family_.arity > 5) {
        throw LimitExceeded("enumeration arity " + std::to_string(family_.arity) +
                            " outside [1, " + std::to_string(arity_limit) + "]");
      }
      end_ = std::uint64_t{1} << (std::uint64_t{1} << family_.arity);
      if (family_.kind == FunctionFamily::Kind::NonconstantTotal) {
        cursor_ = 1;
        end_ -= 1;
      }
      break;
    case FunctionFamily::Kind::Explicit:
      end_ = family_.members.size();
      break;
  }
}

std::optional<QueryFunction> FunctionStream::next() {
  if (cursor_ >= end_) return std::nullopt;
  std::uint64_t i = cursor_++;
  if (family_.kind == FunctionFamily::Kind::Explicit) return family_.members[i];
  return total_from_index(family_.arity, i);
}

std::vector<QueryFunction> collect(FunctionFamily family, int arity_limit) {
  FunctionStream stream(std::move(family), arity_limit);
  std::vector<QueryFunction> out;
  while (auto f = stream.next()) out.push_back(std::move(*f));
  return out;
}

QueryFunction or_function(int n) {
  return tabulate(n, [](std::size_t c) { return c != 0; });
}

QueryFunction and_function(int n) {
  return tabulate(n, [n](std::size_t c) { return c == (std::size_t{1} << n) - 1; });
}

QueryFunction xor_function(int n) {
  return tabulate(n, [](std::size_t c) { return (std::popcount(c) & 1) != 0; });
}

QueryFunction constant_function(int n, bool value) {
  return tabulate(n, [value](std::size_t) { return value; });
}

QueryFunction identity_function() { return from_truth_table(1, {false, true}); }

}  // namespace qlab
