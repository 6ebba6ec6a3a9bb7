#pragma once

#include <string>
#include <vector>

#include "treeshift/automaton.hpp"
#include "treeshift/core.hpp"
#include "treeshift/pattern.hpp"

namespace treeshift {

class CellularAutomaton;

/// A configuration with finite shift orbit, stored as a finite colored
/// transition system: one node per orbit element, a letter per node, and a
/// successor node per direction. Every node is reachable from the root.
class RegularMachine {
 public:
  RegularMachine(TreeSignature sig, Alphabet alphabet, std::vector<std::string> node_names,
                 std::vector<int> colors, std::vector<std::vector<int>> steps, int root);

  const TreeSignature& signature() const { return sig_; }
  int arity() const { return sig_.arity; }
  const Alphabet& alphabet() const { return alphabet_; }
  int node_count() const { return static_cast<int>(node_names_.size()); }
  const std::string& node_name(int i) const;
  int root() const { return root_; }
  int color(int node) const;
  int step(int node, int direction) const;

 private:
  TreeSignature sig_;
  Alphabet alphabet_;
  std::vector<std::string> node_names_;
  std::vector<int> colors_;
  std::vector<std::vector<int>> steps_;
  int root_;
};

/// One outgoing bundle per state, by index into the automaton's bundle
/// list. The default picks the lowest-index bundle of each state.
std::vector<int> default_xi(const RabinAutomaton& a);

/// The regular configuration obtained by always following the chosen
/// bundle, starting at `state`. Orbit size at most the state count; the
/// unrolled configuration is accepted by the automaton.
RegularMachine xi_machine(const RabinAutomaton& a, int state, const std::vector<int>& xi);
RegularMachine xi_machine(const RabinAutomaton& a, int state);

/// The regular configuration agreeing with an accepted block on its whole
/// support and continuing as xi-machines from the run's boundary states.
/// Orbit size at most |support| + |states|.
RegularMachine regular_approximation(const RabinAutomaton& a, const Pattern& p,
                                     const RunAssignment& run, const std::vector<int>& xi);
RegularMachine regular_approximation(const RabinAutomaton& a, const Pattern& p,
                                     const RunAssignment& run);

/// Finite view of the machine's configuration: the block of the given size
/// below one of its nodes.
Pattern unroll_from(const RegularMachine& m, int node, int height);
Pattern unroll(const RegularMachine& m, int height);

/// Image of a regular configuration under a cellular automaton: same orbit
/// graph, node colors replaced by the rule applied to the block below each
/// node. Verifies along the way that every orbit block is a domain block,
/// which certifies that the unrolled configuration lies in the domain.
RegularMachine apply_machine(const CellularAutomaton& tau, const RegularMachine& m);

}  // namespace treeshift
