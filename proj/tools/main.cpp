#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "treeshift/decide.hpp"
#include "treeshift/io.hpp"
#include "treeshift/machine.hpp"

namespace {

using namespace treeshift;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RabinAutomaton load_automaton(const std::string& path) {
  const std::string text = slurp(path);
  switch (detect_kind(text)) {
    case FileKind::Automaton:
      return parse_automaton(text, path);
    case FileKind::FiniteTreeAutomaton:
      return parse_fta(text, path).base();
    default:
      throw std::runtime_error(path + ": expected an automaton file");
  }
}

/// Target of a surjectivity query: an automaton, or a finite-type spec that
/// gets presented on the fly.
RabinAutomaton load_shift(const std::string& path) {
  const std::string text = slurp(path);
  switch (detect_kind(text)) {
    case FileKind::Automaton:
      return parse_automaton(text, path);
    case FileKind::Sft:
      return presentation(parse_sft(text, path));
    default:
      throw std::runtime_error(path + ": expected an automaton or shift file");
  }
}

void print_witness(const Verdict& v, const Alphabet& alphabet) {
  if (!v.detail.empty()) std::cout << v.detail << "\n";
  if (v.witness) std::cout << "witness " << print_pattern(*v.witness, alphabet) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"tree shifts, their automata and cellular automata"};
  app.require_subcommand(1);

  std::string file_a, file_b, file_c;
  int height = 1;
  bool use_oracle = false;
  std::string via;

  auto* accept = app.add_subcommand("accept", "does the automaton accept the pattern");
  accept->add_option("automaton", file_a)->required();
  accept->add_option("pattern", file_b)->required();

  auto* blocks_cmd = app.add_subcommand("blocks", "blocks of a finite-type shift");
  blocks_cmd->add_option("shift", file_a)->required();
  blocks_cmd->add_option("size", height)->required();

  auto* ess = app.add_subcommand("essentialize", "largest sub-automaton without dead states");
  ess->add_option("automaton", file_a)->required();

  auto* codet = app.add_subcommand("codeterminize", "co-deterministic presentation of the same shift");
  codet->add_option("automaton", file_a)->required();

  auto* compl_cmd = app.add_subcommand("complement", "pattern automaton of the complement");
  compl_cmd->add_option("automaton", file_a)->required();

  auto* empty_cmd = app.add_subcommand("empty", "is the accepted pattern set empty");
  empty_cmd->add_option("fta", file_a)->required();
  empty_cmd->add_flag("--oracle", use_oracle, "decide by the exhaustive pattern scan");

  auto* full_cmd = app.add_subcommand("full", "is the shift the full shift");
  full_cmd->add_option("automaton", file_a)->required();

  auto* equal_cmd = app.add_subcommand("equal", "do two automata accept the same shift");
  equal_cmd->add_option("first", file_a)->required();
  equal_cmd->add_option("second", file_b)->required();

  auto* image_cmd = app.add_subcommand("image", "presentation of a rule's image shift");
  image_cmd->add_option("rule", file_a)->required();

  auto* surj = app.add_subcommand("surjective", "is the rule onto the target shift");
  surj->add_option("rule", file_a)->required();
  surj->add_option("target", file_b)->required();
  surj->add_option("--via", via, "sofic domain: presentation of the rule's actual domain");

  auto* inj = app.add_subcommand("injective", "is the rule injective on its domain");
  inj->add_option("rule", file_a)->required();

  auto* glue_cmd = app.add_subcommand("glue", "accepted pattern joining two blocks");
  glue_cmd->add_option("automaton", file_a)->required();
  glue_cmd->add_option("first", file_b)->required();
  glue_cmd->add_option("second", file_c)->required();

  auto* regularize = app.add_subcommand("regularize", "finite-orbit machine matching a block");
  regularize->add_option("automaton", file_a)->required();
  regularize->add_option("block", file_b)->required();

  auto* unroll_cmd = app.add_subcommand("unroll", "block of a machine's configuration");
  unroll_cmd->add_option("machine", file_a)->required();
  unroll_cmd->add_option("height", height)->required();

  auto* graph_cmd = app.add_subcommand("graph", "graph description of an automaton");
  graph_cmd->add_option("automaton", file_a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return kExitHolds;
    }
    std::cerr << e.what() << "\n";
    return kExitError;
  }

  if (accept->parsed()) {
    const std::string text = slurp(file_a);
    if (detect_kind(text) == FileKind::FiniteTreeAutomaton) {
      const FiniteTreeAutomaton b = parse_fta(text, file_a);
      const Pattern p = parse_pattern(slurp(file_b), b.base().alphabet(), file_b);
      const bool ok = fta_accepts(b, p);
      std::cout << (ok ? "accepted" : "rejected") << "\n";
      return ok ? kExitHolds : kExitFails;
    }
    const RabinAutomaton a = parse_automaton(text, file_a);
    const Pattern p = parse_pattern(slurp(file_b), a.alphabet(), file_b);
    const bool ok = accepts_pattern(a, p);
    std::cout << (ok ? "accepted" : "rejected") << "\n";
    return ok ? kExitHolds : kExitFails;
  }
  if (blocks_cmd->parsed()) {
    const SftSpec x = parse_sft(slurp(file_a), file_a);
    for (const Pattern& b : blocks(x, height))
      std::cout << print_pattern(b, x.alphabet()) << "\n";
    return kExitHolds;
  }
  if (ess->parsed()) {
    std::cout << print_automaton(essentialize(load_automaton(file_a)));
    return kExitHolds;
  }
  if (codet->parsed()) {
    std::cout << print_automaton(codeterminize(load_automaton(file_a)));
    return kExitHolds;
  }
  if (compl_cmd->parsed()) {
    std::cout << print_fta(complement_of_shift(load_automaton(file_a)));
    return kExitHolds;
  }
  if (empty_cmd->parsed()) {
    const FiniteTreeAutomaton b = parse_fta(slurp(file_a), file_a);
    const bool empty = use_oracle ? fta_is_empty_scan(b) : fta_is_empty(b);
    if (empty) {
      std::cout << "empty\n";
      return kExitHolds;
    }
    std::cout << "nonempty\n";
    if (const auto w = fta_witness(b))
      std::cout << "witness " << print_pattern(*w, b.base().alphabet()) << "\n";
    return kExitFails;
  }
  if (full_cmd->parsed()) {
    const RabinAutomaton a = load_automaton(file_a);
    const Verdict v = is_full(a);
    std::cout << (v.answer ? "full" : "not-full") << "\n";
    if (!v.answer) print_witness(v, a.alphabet());
    return v.answer ? kExitHolds : kExitFails;
  }
  if (equal_cmd->parsed()) {
    const RabinAutomaton a1 = load_automaton(file_a);
    const RabinAutomaton a2 = load_automaton(file_b);
    const Verdict v = equal_shifts(a1, a2);
    std::cout << (v.answer ? "equal" : "different") << "\n";
    if (!v.answer) print_witness(v, a1.alphabet());
    return v.answer ? kExitHolds : kExitFails;
  }
  if (image_cmd->parsed()) {
    const CellularAutomaton tau = parse_ca(slurp(file_a), file_a);
    std::cout << print_automaton(image_automaton(tau));
    return kExitHolds;
  }
  if (surj->parsed()) {
    const CellularAutomaton tau = parse_ca(slurp(file_a), file_a);
    const RabinAutomaton target = load_shift(file_b);
    const Verdict v = via.empty()
                          ? decide_surjective(tau, target)
                          : decide_surjective_sofic(tau, target, load_automaton(via));
    std::cout << (v.answer ? "surjective" : "not-surjective") << "\n";
    if (!v.answer) print_witness(v, target.alphabet());
    return v.answer ? kExitHolds : kExitFails;
  }
  if (inj->parsed()) {
    const CellularAutomaton tau = parse_ca(slurp(file_a), file_a);
    const Verdict v = decide_injective(tau);
    std::cout << (v.answer ? "injective" : "not-injective") << "\n";
    if (!v.answer && !v.detail.empty()) std::cout << v.detail << "\n";
    return v.answer ? kExitHolds : kExitFails;
  }
  if (glue_cmd->parsed()) {
    const RabinAutomaton a = load_automaton(file_a);
    const Pattern p = parse_pattern(slurp(file_b), a.alphabet(), file_b);
    const Pattern q = parse_pattern(slurp(file_c), a.alphabet(), file_c);
    const GlueResult g = glue_blocks(a, p, q);
    std::cout << print_pattern(g.pattern, a.alphabet()) << "\n";
    for (const auto& [w, v] : g.attachments)
      std::cout << "# copy below " << format_word(w) << " at " << format_word(v) << "\n";
    return kExitHolds;
  }
  if (regularize->parsed()) {
    const RabinAutomaton a = essentialize(load_automaton(file_a));
    const Pattern p = parse_pattern(slurp(file_b), a.alphabet(), file_b);
    const auto run = find_run(a, p);
    if (!run) throw std::runtime_error("block is not accepted by the automaton");
    std::cout << print_machine(regular_approximation(a, p, *run));
    return kExitHolds;
  }
  if (unroll_cmd->parsed()) {
    const RegularMachine m = parse_machine(slurp(file_a), file_a);
    std::cout << print_pattern(unroll(m, height), m.alphabet()) << "\n";
    return kExitHolds;
  }
  if (graph_cmd->parsed()) {
    const std::string text = slurp(file_a);
    if (detect_kind(text) == FileKind::FiniteTreeAutomaton)
      std::cout << graph_description(parse_fta(text, file_a));
    else
      std::cout << graph_description(parse_automaton(text, file_a));
    return kExitHolds;
  }
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
