#pragma once

#include <optional>
#include <vector>

#include "treeshift/automaton.hpp"

namespace treeshift {

/// An automaton for finite full-tree-patterns: initial states restrict the
/// root of a run, and the distinguished final state is forced on the layer
/// of children just below the pattern's leaves.
class FiniteTreeAutomaton {
 public:
  FiniteTreeAutomaton(RabinAutomaton base, std::vector<int> initial, int final_state);

  const RabinAutomaton& base() const { return base_; }
  /// Sorted, duplicate-free.
  const std::vector<int>& initial() const { return initial_; }
  int final_state() const { return final_; }

 private:
  RabinAutomaton base_;
  std::vector<int> initial_;
  int final_;
};

/// Bottom-up acceptance with the final state pinned below the leaves and
/// the root required to land in the initial set.
bool fta_accepts(const FiniteTreeAutomaton& b, const Pattern& p);

/// Subset construction. Produces a co-deterministic automaton accepting the
/// same shift; states are the nonempty source sets reachable from the full
/// state set, named by their sorted members. Essentializes the input first.
RabinAutomaton codeterminize(const RabinAutomaton& a);

/// Pattern automaton of the accepted shift: the subset automaton with every
/// subset state initial and the full state set final. Acceptance coincides
/// with membership of the pattern in the shift's pattern set.
FiniteTreeAutomaton full_pattern_fta(const RabinAutomaton& a);

/// Complement of a co-deterministic pattern automaton: adds a sink state
/// that absorbs every missing (terminals, letter) combination, and flips
/// the initial set. The result is co-complete and co-deterministic.
FiniteTreeAutomaton complement_fta(const FiniteTreeAutomaton& b);

/// Pattern automaton for the patterns NOT in the accepted shift.
FiniteTreeAutomaton complement_of_shift(const RabinAutomaton& a);

/// Emptiness of the accepted pattern set, by the least fixpoint of
/// productive states: a state is productive when some bundle leads entirely
/// to the final state, or entirely to productive states.
bool fta_is_empty(const FiniteTreeAutomaton& b);

/// Reference procedure: scans every pattern of height up to the state
/// count. Exponential; only sensible for small automata.
bool fta_is_empty_scan(const FiniteTreeAutomaton& b);

/// An accepted pattern of height at most the state count, extracted from
/// per-state minimal-height certificates; nullopt when the set is empty.
std::optional<Pattern> fta_witness(const FiniteTreeAutomaton& b);

}  // namespace treeshift
