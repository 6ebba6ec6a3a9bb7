#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treeshift/core.hpp"
#include "treeshift/pattern.hpp"

namespace treeshift {

/// One transition bundle: from a source state, reading a letter, into one
/// terminal state per direction.
struct Bundle {
  int source = 0;
  int label = 0;
  std::vector<int> children;

  friend auto operator<=>(const Bundle&, const Bundle&) = default;
};

/// A top-down tree automaton with no initial states and no acceptance
/// condition: a configuration is accepted when the whole tree can be
/// annotated with states so that every vertex carries a bundle.
///
/// Zero states is legal and denotes the empty shift.
class RabinAutomaton {
 public:
  RabinAutomaton(TreeSignature sig, Alphabet alphabet,
                 std::vector<std::string> state_names, std::vector<Bundle> bundles);

  const TreeSignature& signature() const { return sig_; }
  int arity() const { return sig_.arity; }
  const Alphabet& alphabet() const { return alphabet_; }

  int state_count() const { return static_cast<int>(state_names_.size()); }
  bool empty() const { return state_names_.empty(); }
  const std::string& state_name(int s) const;
  const std::vector<std::string>& state_names() const { return state_names_; }
  std::optional<int> state_index(std::string_view name) const;

  /// Sorted by (source, label, children); duplicates are merged.
  const std::vector<Bundle>& bundles() const { return bundles_; }
  std::span<const Bundle> bundles_from(int state) const;

 private:
  TreeSignature sig_;
  Alphabet alphabet_;
  std::vector<std::string> state_names_;
  std::vector<Bundle> bundles_;
  std::vector<std::size_t> from_offsets_;  // state -> first bundle index
};

/// A run on a full-tree-pattern: states for the support plus one extra
/// layer of children below its leaves.
struct RunAssignment {
  std::map<Word, int> states;
};

/// Bottom-up acceptance of a full-tree-pattern: possible-state sets per
/// vertex, with every state allowed below the leaves.
bool accepts_pattern(const RabinAutomaton& a, const Pattern& p);

/// Acceptance witness, built top-down with lowest-index tie breaking;
/// deterministic for fixed inputs.
std::optional<RunAssignment> find_run(const RabinAutomaton& a, const Pattern& p);

bool is_essential(const RabinAutomaton& a);

/// States surviving essentialization, as sorted original indices.
std::vector<int> essential_states(const RabinAutomaton& a);

/// Greatest sub-automaton in which every state has an outgoing bundle.
/// Keeps the accepted shift; idempotent; may end up with zero states.
RabinAutomaton essentialize(const RabinAutomaton& a);

bool is_deterministic(const RabinAutomaton& a);
bool is_codeterministic(const RabinAutomaton& a);
bool is_cocomplete(const RabinAutomaton& a);

/// Product automaton; accepts exactly the intersection of the two shifts.
/// Preserves co-determinism and co-completeness. States are named by the
/// factor name pairs "(x,y)".
RabinAutomaton join(const RabinAutomaton& a, const RabinAutomaton& b);

/// Every state reaches every state along bundle paths.
bool is_strongly_connected(const RabinAutomaton& a);

struct GlueResult {
  Pattern pattern;
  /// For each boundary word w (the leaf-children layer of p), the word v
  /// such that the glued pattern carries a copy of q below wv.
  std::vector<std::pair<Word, Word>> attachments;
};

/// For a strongly connected automaton and accepted blocks p, q: an accepted
/// full-tree-pattern extending p whose subtree below wv(w) equals q for
/// every boundary word w. Connecting labels are read off shortest bundle
/// paths, ties broken by bundle index.
GlueResult glue_blocks(const RabinAutomaton& a, const Pattern& p, const Pattern& q);

}  // namespace treeshift
