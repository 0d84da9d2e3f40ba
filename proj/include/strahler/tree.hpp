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

// Full binary trees, their Horton-Strahler orders, and the uniform random
// model over trees with a fixed number of leaves.

#ifndef STRAHLER_TREE_HPP_
#define STRAHLER_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strahler/rational.hpp"

namespace strahler {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoChild = std::numeric_limits<NodeIndex>::max();

// A node is a leaf (both children kNoChild) or internal (both children set).
// Children are ordered: mirror images are distinct trees.
struct Node {
  NodeIndex left = kNoChild;
  NodeIndex right = kNoChild;

  bool is_leaf() const { return left == kNoChild; }
  friend bool operator==(const Node&, const Node&) = default;
};

// Arena-backed full binary tree. Instances always satisfy the full binary
// tree invariants; the only unchecked construction paths are internal.
class Tree {
 public:
  // The one-node tree of magnitude 1.
  static Tree leaf();
  static Tree join(const Tree& left, const Tree& right);

  // Validates the arena and throws StructuralError when a node has exactly
  // one child, an index is out of range, a node is shared or unreachable, or
  // the links contain a cycle.
  static Tree from_nodes(std::vector<Node> nodes, NodeIndex root);

  // Balanced parentheses: "()" is a leaf, "(" L R ")" an internal node.
  static Tree from_parens(std::string_view text);
  std::string to_parens() const;

  std::span<const Node> nodes() const { return nodes_; }
  NodeIndex root() const { return root_; }
  std::size_t magnitude() const { return magnitude_; }

  // Same shape, ignoring how nodes are laid out in the arena.
  bool same_shape(const Tree& other) const;

 private:
  friend class RemySampler;
  Tree(std::vector<Node> nodes, NodeIndex root, std::size_t magnitude)
      : nodes_(std::move(nodes)), root_(root), magnitude_(magnitude) {}

  std::vector<Node> nodes_;
  NodeIndex root_ = 0;
  std::size_t magnitude_ = 1;
};

struct StrahlerProfile {
  // Order of every node, indexed like Tree::nodes().
  std::vector<std::uint8_t> orders;
  // counts[r - 1] is the number of branches of order r, for r = 1..R.
  std::vector<std::uint64_t> counts;

  int strahler_number() const { return static_cast<int>(counts.size()); }
  // Branch count of order r; zero beyond the Strahler number.
  std::uint64_t count(int r) const {
    return r >= 1 && r <= strahler_number() ? counts[r - 1] : 0;
  }
};

StrahlerProfile strahler(const Tree& tree);

// Branch counts only, reusing caller-owned scratch. Used by the samplers.
class BranchCounter {
 public:
  // Fills counts[r - 1] for r = 1..R; returns R.
  int count(const Tree& tree, std::vector<std::uint64_t>& counts);

 private:
  std::vector<std::uint8_t> orders_;
  std::vector<NodeIndex> stack_;
};

// S_{q+r}/S_q with the convention that the ratio is 0 when S_q = 0.
Rational bifurcation_ratio(const StrahlerProfile& profile, int q, int r);

inline constexpr int kDefaultEnumerationCap = 12;

// All trees with n leaves, ordered by left-subtree magnitude and then
// recursively by the left and right enumerations.
std::vector<Tree> enumerate_trees(int n, int cap = kDefaultEnumerationCap);

// (2n-2)! / (n! (n-1)!)
BigInt catalan_count(int n);

using Rng = std::mt19937_64;

// Uniform sampler over trees with n leaves by random leaf insertion: each
// step picks one of the 2k-1 nodes and a side uniformly and grafts a new leaf
// there. Holds reusable buffers; one instance per thread.
class RemySampler {
 public:
  const Tree& sample(std::size_t n, Rng& rng);

 private:
  Tree tree_ = Tree::leaf();
  std::vector<NodeIndex> parent_;
};

Tree sample_uniform(std::size_t n, Rng& rng);

}  // namespace strahler

#endif  // STRAHLER_TREE_HPP_
