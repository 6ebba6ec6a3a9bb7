// Randomized cross-module properties: each test ties several constructions
// together and checks them against one another on random instances.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "corpus.hpp"
#include "oracles.hpp"
#include "treeshift/decide.hpp"
#include "treeshift/machine.hpp"

using namespace treeshift;
using namespace treeshift::testing;

namespace {

/// Random rule on a random small domain. Domains cycle through full shifts
/// and the golden mean; outputs over a two-letter target.
CellularAutomaton random_rule(std::mt19937_64& rng, int pick) {
  std::uniform_int_distribution<int> coin(0, 1);
  const std::vector<SftSpec> domains{full_shift_sft(1, {"0", "1"}),
                                     full_shift_sft(2, {"0", "1"}), golden_mean_sft()};
  const SftSpec& x = domains[static_cast<std::size_t>(pick) % domains.size()];
  const int radius = 1 + coin(rng);
  std::map<Pattern, int> table;
  for (const Pattern& b : blocks(x, radius)) table.emplace(b, coin(rng));
  return CellularAutomaton(x, Alphabet({"0", "1"}), radius, std::move(table));
}

}  // namespace

TEST_CASE("random image automata accept exactly the images of domain blocks") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 24; ++round) {
    const CellularAutomaton tau = random_rule(rng, round);
    const RabinAutomaton img = image_automaton(tau);
    const int max_m = tau.domain().arity() == 1 ? 3 : 2;
    for (int m = 1; m <= max_m; ++m) {
      std::set<Pattern> images;
      for (const Pattern& p : blocks(tau.domain(), m + tau.radius() - 1))
        images.insert(apply_to_pattern(tau, p));
      for (const Pattern& q :
           all_blocks(tau.domain().signature(), tau.target_alphabet().size(), m))
        CHECK(accepts_pattern(img, q) == (images.count(q) == 1));
    }
  }
}

TEST_CASE("surjectivity onto a full shift agrees with image fullness") {
  std::mt19937_64 rng(67);
  int surjective_seen = 0;
  for (int round = 0; round < 30; ++round) {
    const CellularAutomaton tau = random_rule(rng, round);
    const RabinAutomaton full =
        full_shift_automaton(tau.domain().arity(), tau.target_alphabet().tokens());
    const Verdict direct = decide_surjective(tau, full);
    CHECK(direct.answer == is_full(image_automaton(tau)).answer);
    if (direct.answer) ++surjective_seen;
  }
  CHECK(surjective_seen > 0);
}

TEST_CASE("the sofic-domain route agrees with the direct route") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 18; ++round) {
    const CellularAutomaton tau = random_rule(rng, round);
    const RabinAutomaton target =
        full_shift_automaton(tau.domain().arity(), tau.target_alphabet().tokens());
    // the domain handed over as a presentation instead of a block spec
    const RabinAutomaton dp = presentation(tau.domain());
    const Verdict direct = decide_surjective(tau, target);
    const Verdict routed = decide_surjective_sofic(tau, target, dp);
    CHECK(direct.answer == routed.answer);
  }
}

TEST_CASE("noninjectivity verdicts are realized by two distinct preimage machines") {
  std::mt19937_64 rng(73);
  int verified = 0;
  for (int round = 0; round < 40 && verified < 8; ++round) {
    const CellularAutomaton tau = random_rule(rng, round);
    if (decide_injective(tau).answer) continue;

    const SftSpec& x = tau.domain();
    const int n = std::max({tau.radius(), x.memory(), 2});
    const std::vector<Pattern> state_blocks = blocks(x, n - 1);
    const RabinAutomaton img = image_automaton(tau);
    REQUIRE(static_cast<int>(state_blocks.size()) == img.state_count());

    const RabinAutomaton pair = essentialize(join(img, img));
    int nondiag = -1;
    for (int s = 0; s < pair.state_count() && nondiag < 0; ++s) {
      // recover the coordinates from the original product layout
      for (int i = 0; i < img.state_count() && nondiag < 0; ++i)
        for (int j = 0; j < img.state_count(); ++j)
          if (i != j &&
              pair.state_name(s) == "(" + img.state_name(i) + "," + img.state_name(j) + ")") {
            nondiag = s;
            break;
          }
    }
    REQUIRE(nondiag >= 0);

    // run forever from the nondiagonal pair; the two coordinates give two
    // runs on the same image configuration
    const RegularMachine joint = xi_machine(pair, nondiag);
    auto coordinate_machine = [&](bool second) {
      std::vector<std::string> names;
      std::vector<int> colors;
      std::vector<std::vector<int>> steps;
      for (int node = 0; node < joint.node_count(); ++node) {
        const std::string& name = joint.node_name(node);
        // node names are "(left,right)" pair names of image states
        int found = -1;
        for (int i = 0; i < img.state_count() && found < 0; ++i)
          for (int j = 0; j < img.state_count(); ++j)
            if (name == "(" + img.state_name(i) + "," + img.state_name(j) + ")") {
              found = second ? j : i;
              break;
            }
        REQUIRE(found >= 0);
        names.push_back("n" + std::to_string(node));
        colors.push_back(state_blocks[static_cast<std::size_t>(found)].label());
        std::vector<int> row;
        for (int d = 0; d < joint.arity(); ++d) row.push_back(joint.step(node, d));
        steps.push_back(std::move(row));
      }
      return RegularMachine(joint.signature(), x.alphabet(), std::move(names),
                            std::move(colors), std::move(steps), joint.root());
    };
    const RegularMachine pre1 = coordinate_machine(false);
    const RegularMachine pre2 = coordinate_machine(true);

    const int depth = joint.node_count() + n + 2;
    CHECK(unroll(pre1, depth) != unroll(pre2, depth));
    const RegularMachine post1 = apply_machine(tau, pre1);
    const RegularMachine post2 = apply_machine(tau, pre2);
    CHECK(unroll(post1, depth) == unroll(post2, depth));
    ++verified;
  }
  CHECK(verified >= 8);
}
