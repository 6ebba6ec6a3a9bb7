#pragma once

#include <string>
#include <vector>

#include "treeshift/automaton.hpp"
#include "treeshift/core.hpp"
#include "treeshift/pattern.hpp"

namespace treeshift {

/// A shift of finite type: the configurations avoiding a finite set of
/// forbidden blocks, all of the same size (the memory).
class SftSpec {
 public:
  SftSpec(TreeSignature sig, Alphabet alphabet, int memory, std::vector<Pattern> forbidden);

  const TreeSignature& signature() const { return sig_; }
  int arity() const { return sig_.arity; }
  const Alphabet& alphabet() const { return alphabet_; }
  int memory() const { return memory_; }
  /// Sorted and duplicate-free, every block on delta(memory).
  const std::vector<Pattern>& forbidden() const { return forbidden_; }

 private:
  TreeSignature sig_;
  Alphabet alphabet_;
  int memory_;
  std::vector<Pattern> forbidden_;
};

/// Builds an SftSpec from blocks of mixed sizes by extending everything to
/// the maximal size (or to `declared_memory` when larger). The result
/// defines the same shift as the raw family.
SftSpec normalize(TreeSignature sig, const Alphabet& alphabet,
                  const std::vector<Pattern>& raw, int declared_memory = 0);

/// Canonical co-deterministic presentation: states are the extendable
/// blocks of size max(memory, 2) - 1, bundles glue a state with compatible
/// child states whenever the glued block avoids the forbidden set, labels
/// read the root letter. Essentialized before return, so pattern acceptance
/// coincides with block membership.
RabinAutomaton presentation(const SftSpec& x);

/// The blocks of size n of the shift, i.e. restrictions of configurations.
/// Computed through the essential presentation; plain avoidance is not
/// enough because an avoider block may fail to extend downward.
std::vector<Pattern> blocks(const SftSpec& x, int n);

/// Deterministic display name for a block used as an automaton state:
/// preorder letter tokens joined with '.'.
std::string block_state_name(const Pattern& p, const Alphabet& alphabet);

}  // namespace treeshift
