// Copyright 2026 The Strahler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "strahler/tree.hpp"

#include <algorithm>
#include <utility>

#include "strahler/errors.hpp"

namespace strahler {

namespace {

constexpr std::uint8_t kUnvisited = 0;
constexpr std::uint8_t kExpanded = 0xff;

void bump(std::vector<std::uint64_t>& counts, int order) {
  if (counts.size() < static_cast<std::size_t>(order)) counts.resize(order, 0);
  ++counts[order - 1];
}

// Post-order pass assigning orders bottom-up. A branch starts at every leaf
// and at every node whose two children share an order; all other nodes
// extend the branch of their higher-order child.
int assign_orders(const Tree& tree, std::vector<std::uint8_t>& orders,
                  std::vector<NodeIndex>& stack,
                  std::vector<std::uint64_t>& counts) {
  const auto nodes = tree.nodes();
  orders.assign(nodes.size(), kUnvisited);
  counts.clear();
  stack.clear();

  if (nodes[tree.root()].is_leaf()) {
    orders[tree.root()] = 1;
    bump(counts, 1);
    return 1;
  }
  stack.push_back(tree.root());
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    const Node& node = nodes[v];
    if (orders[v] == kUnvisited) {
      orders[v] = kExpanded;
      for (NodeIndex child : {node.right, node.left}) {
        if (nodes[child].is_leaf()) {
          orders[child] = 1;
          bump(counts, 1);
        } else {
          stack.push_back(child);
        }
      }
      continue;
    }
    stack.pop_back();
    const std::uint8_t a = orders[node.left];
    const std::uint8_t b = orders[node.right];
    if (a == b) {
      orders[v] = static_cast<std::uint8_t>(a + 1);
      bump(counts, a + 1);
    } else {
      orders[v] = std::max(a, b);
    }
  }
  return static_cast<int>(counts.size());
}

}  // namespace

Tree Tree::leaf() { return Tree({Node{}}, 0, 1); }

Tree Tree::join(const Tree& left, const Tree& right) {
  std::vector<Node> nodes;
  nodes.reserve(left.nodes_.size() + right.nodes_.size() + 1);
  nodes.insert(nodes.end(), left.nodes_.begin(), left.nodes_.end());
  const auto offset = static_cast<NodeIndex>(left.nodes_.size());
  for (Node n : right.nodes_) {
    if (!n.is_leaf()) {
      n.left += offset;
      n.right += offset;
    }
    nodes.push_back(n);
  }
  nodes.push_back(Node{left.root_, right.root_ + offset});
  const auto root = static_cast<NodeIndex>(nodes.size() - 1);
  return Tree(std::move(nodes), root, left.magnitude_ + right.magnitude_);
}

Tree Tree::from_nodes(std::vector<Node> nodes, NodeIndex root) {
  const std::size_t size = nodes.size();
  if (size == 0) throw StructuralError("tree has no nodes");
  if (root >= size) throw StructuralError("root index out of range");

  std::vector<std::uint8_t> parents(size, 0);
  std::size_t leaves = 0;
  for (std::size_t i = 0; i < size; ++i) {
    const Node& n = nodes[i];
    const bool has_left = n.left != kNoChild;
    const bool has_right = n.right != kNoChild;
    if (has_left != has_right) {
      throw StructuralError("node " + std::to_string(i) +
                            " has exactly one child");
    }
    if (!has_left) {
      ++leaves;
      continue;
    }
    for (NodeIndex c : {n.left, n.right}) {
      if (c >= size) {
        throw StructuralError("child index out of range at node " +
                              std::to_string(i));
      }
      if (++parents[c] > 1) {
        throw StructuralError("node " + std::to_string(c) +
                              " has more than one parent");
      }
    }
  }
  if (parents[root] != 0) throw StructuralError("root has a parent");

  // With in-degree <= 1 and a parentless root, reaching every node from the
  // root rules out cycles and detached components.
  std::vector<NodeIndex> stack{root};
  std::size_t reached = 0;
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    ++reached;
    if (!nodes[v].is_leaf()) {
      stack.push_back(nodes[v].left);
      stack.push_back(nodes[v].right);
    }
  }
  if (reached != size) {
    throw StructuralError("nodes unreachable from the root");
  }
  return Tree(std::move(nodes), root, leaves);
}

Tree Tree::from_parens(std::string_view text) {
  struct Frame {
    NodeIndex children[2];
    int filled = 0;
  };
  std::vector<Node> nodes;
  std::vector<Frame> open;
  std::size_t leaves = 0;
  bool done = false;
  NodeIndex root = 0;

  auto emit = [&](NodeIndex v) {
    if (open.empty()) {
      done = true;
      root = v;
      return;
    }
    Frame& f = open.back();
    if (f.filled == 2) {
      throw StructuralError("internal node with more than two children");
    }
    f.children[f.filled++] = v;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    if (done) throw StructuralError("trailing characters after tree");
    const char c = text[i];
    if (c == '(') {
      if (i + 1 < text.size() && text[i + 1] == ')') {
        nodes.push_back(Node{});
        ++leaves;
        ++i;
        emit(static_cast<NodeIndex>(nodes.size() - 1));
      } else {
        open.push_back(Frame{});
      }
    } else if (c == ')') {
      if (open.empty()) throw StructuralError("unbalanced ')'");
      const Frame f = open.back();
      open.pop_back();
      if (f.filled != 2) {
        throw StructuralError("internal node needs exactly two children");
      }
      nodes.push_back(Node{f.children[0], f.children[1]});
      emit(static_cast<NodeIndex>(nodes.size() - 1));
    } else {
      throw StructuralError(std::string("unexpected character '") + c + "'");
    }
  }
  if (!done) throw StructuralError("incomplete tree encoding");
  return Tree(std::move(nodes), root, leaves);
}

std::string Tree::to_parens() const {
  std::string out;
  out.reserve(nodes_.size() * 2);
  constexpr NodeIndex kClose = kNoChild;
  std::vector<NodeIndex> stack{root_};
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    if (v == kClose) {
      out.push_back(')');
    } else if (nodes_[v].is_leaf()) {
      out += "()";
    } else {
      out.push_back('(');
      stack.push_back(kClose);
      stack.push_back(nodes_[v].right);
      stack.push_back(nodes_[v].left);
    }
  }
  return out;
}

bool Tree::same_shape(const Tree& other) const {
  return magnitude_ == other.magnitude_ && to_parens() == other.to_parens();
}

StrahlerProfile strahler(const Tree& tree) {
  StrahlerProfile profile;
  std::vector<NodeIndex> stack;
  assign_orders(tree, profile.orders, stack, profile.counts);
  return profile;
}

int BranchCounter::count(const Tree& tree, std::vector<std::uint64_t>& counts) {
  return assign_orders(tree, orders_, stack_, counts);
}

Rational bifurcation_ratio(const StrahlerProfile& profile, int q, int r) {
  if (q < 1 || r < 1) throw DomainError("orders must be positive");
  const std::uint64_t denominator = profile.count(q);
  if (denominator == 0) return Rational(0);
  Rational out(BigInt(std::to_string(profile.count(q + r))),
               BigInt(std::to_string(denominator)));
  out.canonicalize();
  return out;
}

BigInt catalan_count(int n) {
  if (n < 1) throw DomainError("magnitude must be positive");
  BigInt c = binomial(2u * n - 2, n - 1);
  return c / n;
}

std::vector<Tree> enumerate_trees(int n, int cap) {
  if (n < 1 || n > cap) {
    throw DomainError("enumeration magnitude " + std::to_string(n) +
                      " outside [1, " + std::to_string(cap) + "]");
  }
  std::vector<std::vector<Tree>> by_size(n + 1);
  by_size[1].push_back(Tree::leaf());
  for (int size = 2; size <= n; ++size) {
    auto& out = by_size[size];
    for (int left = 1; left < size; ++left) {
      for (const Tree& l : by_size[left]) {
        for (const Tree& r : by_size[size - left]) {
          out.push_back(Tree::join(l, r));
        }
      }
    }
  }
  return std::move(by_size[n]);
}

const Tree& RemySampler::sample(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("magnitude must be positive");
  const std::size_t size = 2 * n - 1;
  auto& nodes = tree_.nodes_;
  nodes.resize(size);
  parent_.resize(size);
  nodes[0] = Node{};
  parent_[0] = kNoChild;
  NodeIndex root = 0;

  for (std::size_t k = 1; k < n; ++k) {
    const std::uint64_t existing = 2 * k - 1;
    std::uniform_int_distribution<std::uint64_t> pick(0, 2 * existing - 1);
    const std::uint64_t u = pick(rng);
    const auto x = static_cast<NodeIndex>(u >> 1);
    const auto y = static_cast<NodeIndex>(existing);
    const auto z = static_cast<NodeIndex>(existing + 1);
    nodes[z] = Node{};
    nodes[y] = (u & 1u) ? Node{z, x} : Node{x, z};
    const NodeIndex p = parent_[x];
    parent_[y] = p;
    parent_[x] = y;
    parent_[z] = y;
    if (p == kNoChild) {
      root = y;
    } else if (nodes[p].left == x) {
      nodes[p].left = y;
    } else {
      nodes[p].right = y;
    }
  }
  tree_.root_ = root;
  tree_.magnitude_ = n;
  return tree_;
}

Tree sample_uniform(std::size_t n, Rng& rng) {
  RemySampler sampler;
  return sampler.sample(n, rng);
}

}  // namespace strahler
