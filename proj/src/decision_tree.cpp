#include "qlab/decision_tree.hpp"

#include <algorithm>
#include <functional>

namespace qlab {

DecisionTree DecisionTree::single_leaf(Label label) {
  DecisionTree t;
  t.set_root(t.add_leaf(std::move(label)));
  return t;
}

int DecisionTree::add_leaf(Label label) {
  Node n;
  n.label = std::move(label);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int DecisionTree::add_query(int position, const std::array<int, kMaxSymbols>& children) {
  Node n;
  n.position = position;
  n.child = children;
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int DecisionTree::depth() const {
  std::function<int(int)> rec = [&](int v) -> int {
    const Node& n = nodes_[static_cast<std::size_t>(v)];
    if (n.position < 0) return 0;
    int d = 0;
    for (int c : n.child) {
      if (c >= 0) d = std::max(d, rec(c));
    }
    return d + 1;
  };
  return root_ < 0 ? 0 : rec(root_);
}

DecisionTree::Outcome DecisionTree::run(const Word& x) const {
  Outcome out;
  int v = root_;
  while (true) {
    if (v < 0) throw PreconditionError("decision tree has no branch for this input");
    const Node& n = nodes_[static_cast<std::size_t>(v)];
    if (n.position < 0) {
      out.label = &n.label;
      return out;
    }
    ++out.queries;
    v = n.child[static_cast<std::size_t>(x.at(static_cast<std::size_t>(n.position)))];
  }
}

bool DecisionTree::well_formed() const {
  std::vector<int> on_path;
  std::function<bool(int)> rec = [&](int v) -> bool {
    const Node& n = nodes_[static_cast<std::size_t>(v)];
    if (n.position < 0) return true;
    if (std::find(on_path.begin(), on_path.end(), n.position) != on_path.end()) return false;
    on_path.push_back(n.position);
    bool ok = true;
    for (int c : n.child) {
      if (c >= 0) ok = ok && rec(c);
    }
    on_path.pop_back();
    return ok;
  };
  return root_ >= 0 && rec(root_);
}

std::string DecisionTree::to_string() const {
  std::function<std::string(int)> rec = [&](int v) -> std::string {
    const Node& n = nodes_[static_cast<std::size_t>(v)];
    if (n.position < 0) return "leaf(" + label_to_string(n.label) + ")";
    std::string s = "x" + std::to_string(n.position + 1) + "{";
    bool first = true;
    for (int a = 0; a < kMaxSymbols; ++a) {
      if (n.child[static_cast<std::size_t>(a)] < 0) continue;
      if (!first) s += ',';
      first = false;
      s += to_char(static_cast<Symbol>(a));
      s += ':';
      s += rec(n.child[static_cast<std::size_t>(a)]);
    }
    return s + "}";
  };
  return root_ < 0 ? std::string("empty") : rec(root_);
}

TreeProfile profile(const DecisionTree& tree, const QueryFunction& f) {
  TreeProfile p;
  p.cost.resize(f.domain_size());
  p.wrong.resize(f.domain_size());
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    auto o = tree.run(f.input(i));
    p.cost[i] = o.queries;
    p.wrong[i] = *o.label != f.value(i);
  }
  return p;
}

}  // namespace qlab
