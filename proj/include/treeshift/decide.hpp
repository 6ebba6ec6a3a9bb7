#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeshift/cellular.hpp"
#include "treeshift/fta.hpp"

namespace treeshift {

struct Verdict {
  bool answer = false;
  /// Separating full-tree-pattern for a negative equality, fullness, or
  /// surjectivity verdict; absent otherwise.
  std::optional<Pattern> witness;
  /// Short human-readable certificate (e.g. the surviving nondiagonal state
  /// pair for a noninjectivity verdict, or which side accepts the witness).
  std::string detail;
  /// Sizes of the intermediate automata, for reports.
  std::vector<std::pair<std::string, std::size_t>> stats;
};

/// Do two automata accept the same shift? Decided through the pattern sets:
/// both differences must have an empty pattern automaton. A witness pattern
/// is accepted by exactly one side.
Verdict equal_shifts(const RabinAutomaton& a1, const RabinAutomaton& a2);

/// Is every pattern over the alphabet a pattern of the shift?
Verdict is_full(const RabinAutomaton& a);

/// Is the accepted shift of `a` contained in the accepted shift of `b`?
Verdict shift_contained(const RabinAutomaton& a, const RabinAutomaton& b);

/// Surjectivity of a rule onto a target shift: the image presentation must
/// equal the target. The sofic-domain variant routes the rule through the
/// bundle cover of the supplied domain presentation first.
Verdict decide_surjective(const CellularAutomaton& tau, const RabinAutomaton& target);
Verdict decide_surjective(const CellularAutomaton& tau, const SftSpec& target);
Verdict decide_surjective_sofic(const CellularAutomaton& tau, const RabinAutomaton& target,
                                const RabinAutomaton& domain_presentation);

/// Injectivity of a rule on its (finite-type) domain: the essential part of
/// the self-join of the image presentation must be purely diagonal.
Verdict decide_injective(const CellularAutomaton& tau);

/// Checks the endomorphism case for an injective-but-not-surjective
/// violation. The answer reports the violation, which is expected never to
/// occur; throws when the rule's image leaves its own domain.
Verdict surjunctivity_check(const CellularAutomaton& tau);

}  // namespace treeshift
