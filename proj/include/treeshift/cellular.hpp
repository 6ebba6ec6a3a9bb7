#pragma once

#include <map>

#include "treeshift/automaton.hpp"
#include "treeshift/sft.hpp"

namespace treeshift {

/// A cellular automaton between tree shifts: a local rule that reads the
/// block of some fixed size below each vertex of a configuration of the
/// domain shift and emits one target letter.
///
/// The table is total on exactly the domain blocks of the stored radius.
/// The radius may be smaller than the domain memory (one-cell relabelings
/// are the common case); constructions that need a larger window extend the
/// table by restriction.
class CellularAutomaton {
 public:
  CellularAutomaton(SftSpec domain, Alphabet target, int radius,
                    std::map<Pattern, int> table);

  const SftSpec& domain() const { return domain_; }
  const Alphabet& target_alphabet() const { return target_; }
  int radius() const { return radius_; }
  const std::map<Pattern, int>& table() const { return table_; }

  /// Output letter for a domain block of the stored radius; throws when the
  /// block is outside the rule table (the input is not a domain block).
  int lookup(const Pattern& block) const;

 private:
  SftSpec domain_;
  Alphabet target_;
  int radius_;
  std::map<Pattern, int> table_;
};

/// Applies the local rule to a block: the output at w reads the sub-block
/// of the rule's size below w. Shrinks a block of size m + radius - 1 to
/// one of size m.
Pattern apply_to_pattern(const CellularAutomaton& tau, const Pattern& p);

/// The de Bruijn presentation of the image shift: states are the extendable
/// domain blocks one level shallower than the effective window, bundles
/// glue overlapping states into an extendable block, labeled by the rule's
/// value on the glued block. Every state of the result is extendable, so
/// the automaton is essential.
RabinAutomaton image_automaton(const CellularAutomaton& tau);

struct SftCover {
  SftSpec shift;
  CellularAutomaton relabel;
};

/// The bundle shift of an essential automaton together with the one-cell
/// relabeling onto the accepted shift: letters are the bundles themselves,
/// the forbidden blocks are the source/terminal mismatches, and the
/// relabeling reads each bundle's label.
SftCover sft_cover(const RabinAutomaton& a);

/// Composition with a one-cell relabeling in front: yields the rule of
/// tau after prior on prior's domain, with tau's radius.
CellularAutomaton compose_relabel(const CellularAutomaton& tau,
                                  const CellularAutomaton& prior);

}  // namespace treeshift
