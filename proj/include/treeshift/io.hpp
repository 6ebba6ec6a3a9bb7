#pragma once

#include <stdexcept>
#include <string>

#include "treeshift/cellular.hpp"
#include "treeshift/fta.hpp"
#include "treeshift/machine.hpp"

namespace treeshift {

/// Parse failure with source location; the message carries file, line and
/// the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, int line, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + message) {}
};

/// All formats are UTF-8 text with LF line endings, whitespace-separated
/// tokens and '#' comments. Printing is deterministic, and parsing a
/// printed value reproduces it.

Pattern parse_pattern(const std::string& text, const Alphabet& alphabet,
                      const std::string& file = "<pattern>");
std::string print_pattern(const Pattern& p, const Alphabet& alphabet);

RabinAutomaton parse_automaton(const std::string& text, const std::string& file = "<automaton>");
std::string print_automaton(const RabinAutomaton& a);

SftSpec parse_sft(const std::string& text, const std::string& file = "<sft>");
std::string print_sft(const SftSpec& x);

/// The domain shift of a rule file is implied by the rule set: blocks of
/// the rule size without a rule line are the forbidden blocks. Every listed
/// block must actually be a block of that shift.
CellularAutomaton parse_ca(const std::string& text, const std::string& file = "<ca>");
std::string print_ca(const CellularAutomaton& tau);

FiniteTreeAutomaton parse_fta(const std::string& text, const std::string& file = "<fta>");
std::string print_fta(const FiniteTreeAutomaton& b);

RegularMachine parse_machine(const std::string& text, const std::string& file = "<machine>");
std::string print_machine(const RegularMachine& m);

/// DOT description with one point node per bundle: the source edge carries
/// the letter, the child edges carry their directions. Node order is the
/// canonical state and bundle order.
std::string graph_description(const RabinAutomaton& a);
std::string graph_description(const FiniteTreeAutomaton& b);

enum class FileKind { Pattern, Automaton, Sft, CellularAutomaton, FiniteTreeAutomaton, Machine };

/// Guesses the format of a file from its keywords.
FileKind detect_kind(const std::string& text);

}  // namespace treeshift
