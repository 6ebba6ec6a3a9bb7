#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "treeshift/core.hpp"

namespace treeshift {

/// A finite full subtree of the regular tree: every vertex carries either
/// all of its children or none. The invariant is structural, an internal
/// node is built from a nonempty vector of child subtrees.
class FullSubtree {
 public:
  FullSubtree() = default;  // a single leaf
  explicit FullSubtree(std::vector<FullSubtree> children);

  bool is_leaf() const { return children_.empty(); }
  const std::vector<FullSubtree>& children() const { return children_; }

  /// Number of vertices on a longest root-to-leaf path (1 for a leaf).
  int height() const;
  std::size_t size() const;
  bool contains(const Word& w) const;

  friend bool operator==(const FullSubtree& a, const FullSubtree& b) {
    return a.children_ == b.children_;
  }

 private:
  std::vector<FullSubtree> children_;
};

/// The complete subtree of all words of length < n.
FullSubtree delta(TreeSignature sig, int n);
std::size_t delta_size(TreeSignature sig, int n);

/// A labeling of a finite full subtree by alphabet indices. A pattern whose
/// support is some delta(sig, n) is called a block of size n.
class Pattern {
 public:
  explicit Pattern(int label) : label_(label) {}
  Pattern(int label, std::vector<Pattern> children);

  int label() const { return label_; }
  bool is_leaf() const { return children_.empty(); }
  const std::vector<Pattern>& children() const { return children_; }

  int height() const;
  std::size_t size() const;
  FullSubtree shape() const;

  /// Subtree of the pattern rooted at w; throws naming the offending word
  /// when w leaves the support.
  const Pattern& subtree(const Word& w) const;
  int label_at(const Word& w) const { return subtree(w).label(); }

  /// True when every internal vertex has exactly `arity` children.
  bool matches_arity(int arity) const;

 private:
  int label_ = 0;
  std::vector<Pattern> children_;
};

int compare(const Pattern& a, const Pattern& b);
inline bool operator==(const Pattern& a, const Pattern& b) { return compare(a, b) == 0; }
inline bool operator!=(const Pattern& a, const Pattern& b) { return compare(a, b) != 0; }
inline bool operator<(const Pattern& a, const Pattern& b) { return compare(a, b) < 0; }

/// True when the support is exactly delta(_, height), i.e. uniform depth.
bool is_block(const Pattern& p);

/// Restriction of a block to its top n levels.
Pattern truncate_block(const Pattern& p, int n);

/// The pattern m -> p(wm) with support M; requires wM inside the support
/// of p, reported with the offending word otherwise.
Pattern subpattern(const Pattern& p, const Word& w, const FullSubtree& m);

/// The translated labeling wm -> p(m), as an explicit word-to-letter map.
std::map<Word, int> translate(const Word& w, const Pattern& p);

/// Uniform-size extension of a family of blocks: all blocks on
/// delta(target) restricting to some member of `blocks`. `target` of 0
/// means the maximal member height. Defines the same avoider shift.
std::vector<Pattern> extend_blocks(TreeSignature sig, const Alphabet& alphabet,
                                   const std::vector<Pattern>& blocks, int target = 0);

/// Enumerates every full-tree-pattern of height <= max_height exactly once.
/// Order: supports first (a leaf, then internal shapes by the lexicographic
/// sequence of their child shapes), then labelings in root-first
/// lexicographic order over letter indices. The count grows doubly
/// exponentially in the height; callers keep max_height small.
void for_each_pattern(TreeSignature sig, int alphabet_size, int max_height,
                      const std::function<void(const Pattern&)>& fn);
std::vector<Pattern> all_patterns(TreeSignature sig, int alphabet_size, int max_height);

/// Enumerates every block of size exactly n, labels in root-first
/// lexicographic order.
void for_each_block(TreeSignature sig, int alphabet_size, int n,
                    const std::function<void(const Pattern&)>& fn);
std::vector<Pattern> all_blocks(TreeSignature sig, int alphabet_size, int n);

}  // namespace treeshift
