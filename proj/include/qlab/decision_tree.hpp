#pragma once

#include <array>
#include <string>
#include <vector>

#include "qlab/function.hpp"

namespace qlab {

// Nodes live in a flat arena; node 0 is not necessarily the root.
class DecisionTree {
 public:
  struct Node {
    int position = -1;  // -1 marks a leaf
    Label label;        // meaningful on leaves only
    std::array<int, kMaxSymbols> child{-1, -1, -1, -1};
  };

  static DecisionTree single_leaf(Label label);

  int add_leaf(Label label);
  int add_query(int position, const std::array<int, kMaxSymbols>& children);
  void set_root(int node) { root_ = node; }

  int root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  int depth() const;

  struct Outcome {
    int queries = 0;
    const Label* label = nullptr;
  };

  /// Follows `x` from the root. Throws PreconditionError when a query has no
  /// child for the symbol read.
  Outcome run(const Word& x) const;

  /// No position is queried twice on any root-to-leaf path.
  bool well_formed() const;

  /// Nested text form, positions 1-based: "x1{0:leaf(0),1:x2{...}}".
  std::string to_string() const;

  bool operator==(const DecisionTree&) const = default;

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Per-domain-input query count and correctness of a tree.
struct TreeProfile {
  std::vector<int> cost;
  std::vector<bool> wrong;

  bool operator==(const TreeProfile&) const = default;
};

TreeProfile profile(const DecisionTree& tree, const QueryFunction& f);

}  // namespace qlab
