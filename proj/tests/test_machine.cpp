#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "treeshift/machine.hpp"

using namespace treeshift;
using namespace treeshift::testing;

TEST_CASE("xi machine on the one-state full shift is constant") {
  const RabinAutomaton full = full_shift_automaton(2, {"a", "b"});
  const RegularMachine m = xi_machine(full, 0);  // lowest bundle picks letter a
  CHECK(m.node_count() == 1);
  CHECK(unroll(m, 3) == Pattern(0, {Pattern(0, {Pattern(0), Pattern(0)}),
                                    Pattern(0, {Pattern(0), Pattern(0)})}));
}

TEST_CASE("xi machine can alternate levels") {
  const RabinAutomaton a = monochromatic_automaton();
  // choose the cross bundles: a emits a into (b,b), b emits b into (a,a)
  std::vector<int> xi(2);
  const std::vector<Bundle>& ts = a.bundles();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] == Bundle{0, 0, {1, 1}}) xi[0] = static_cast<int>(i);
    if (ts[i] == Bundle{1, 1, {0, 0}}) xi[1] = static_cast<int>(i);
  }
  const RegularMachine m = xi_machine(a, 0, xi);
  CHECK(m.node_count() == 2);
  const Pattern u = unroll(m, 3);
  CHECK(u.label() == 0);
  CHECK(u.children()[0].label() == 1);
  CHECK(u.children()[0].children()[1].label() == 0);
  CHECK(accepts_pattern(a, u));
}

TEST_CASE("xi machine on the golden mean loop is constant zero") {
  const RabinAutomaton golden = golden_mean_automaton();
  // default xi picks the loop on state 0 labeled 0
  const RegularMachine m = xi_machine(golden, 0);
  CHECK(unroll(m, 4) == chain_block({0, 0, 0, 0}));
}

TEST_CASE("unrolled xi machines are always accepted") {
  for (const RabinAutomaton& a :
       {full_shift_automaton(2, {"a", "b"}), monochromatic_automaton(), even_sum_automaton(),
        golden_mean_automaton(), even_shift_automaton()}) {
    for (int s = 0; s < a.state_count(); ++s) {
      const RegularMachine m = xi_machine(a, s);
      CHECK(m.node_count() <= a.state_count());
      for (int h = 1; h <= a.state_count() + 2; ++h) CHECK(accepts_pattern(a, unroll(m, h)));
    }
  }
}

TEST_CASE("regular approximation reproduces the block and stays accepted") {
  const RabinAutomaton a = even_sum_automaton();
  const Pattern p(0, {Pattern(1), Pattern(1)});
  const auto run = find_run(a, p);
  REQUIRE(run.has_value());
  const RegularMachine m = regular_approximation(a, p, *run);
  CHECK(unroll(m, 2) == p);
  CHECK(accepts_pattern(a, unroll(m, 4)));
  CHECK(m.node_count() <= static_cast<int>(delta_size(a.signature(), 2)) + a.state_count());
}

TEST_CASE("regular approximation across the corpus") {
  for (const RabinAutomaton& a :
       {full_shift_automaton(2, {"a", "b"}), monochromatic_automaton(), even_sum_automaton(),
        golden_mean_automaton(), even_shift_automaton()}) {
    for (const Pattern& p : all_blocks(a.signature(), a.alphabet().size(), 2)) {
      const auto run = find_run(a, p);
      if (!run) continue;
      const RegularMachine m = regular_approximation(a, p, *run);
      CHECK(unroll(m, 2) == p);
      CHECK(accepts_pattern(a, unroll(m, 4)));
    }
  }
}

TEST_CASE("regular approximation of a single-vertex block") {
  const RabinAutomaton a = even_sum_automaton();
  const Pattern p(0);
  const auto run = find_run(a, p);
  REQUIRE(run.has_value());
  const RegularMachine m = regular_approximation(a, p, *run);
  // root colored by the block, continuing as xi machines below
  CHECK(m.color(m.root()) == 0);
  CHECK(unroll(m, 1) == p);
  for (int h = 2; h <= 4; ++h) CHECK(accepts_pattern(a, unroll(m, h)));

  // a constant block on the full shift approximates to a constant machine
  const RabinAutomaton full = full_shift_automaton(2, {"a", "b"});
  const auto run2 = find_run(full, Pattern(0));
  const RegularMachine c = regular_approximation(full, Pattern(0), *run2);
  CHECK(unroll(c, 3) == unroll(xi_machine(full, 0), 3));
}

TEST_CASE("regular approximation validates the run") {
  const RabinAutomaton a = even_sum_automaton();
  const Pattern p(0, {Pattern(1), Pattern(1)});
  RunAssignment bogus;
  for (const Word& w : {Word{}, Word{0}, Word{1}, Word{0, 0}, Word{0, 1}, Word{1, 0}, Word{1, 1}})
    bogus.states[w] = 0;
  CHECK_THROWS(regular_approximation(a, p, bogus));
}

TEST_CASE("unroll heights") {
  const RegularMachine constant(TreeSignature{1}, Alphabet({"x"}), {"n"}, {0}, {{0}}, 0);
  CHECK(unroll(constant, 1) == Pattern(0));
  CHECK(unroll(constant, 3) == chain_block({0, 0, 0}));
  CHECK_THROWS(unroll(constant, 0));

  const RegularMachine ab(TreeSignature{1}, Alphabet({"a", "b"}), {"n0", "n1"}, {0, 1},
                          {{1}, {0}}, 0);
  CHECK(unroll(ab, 4) == chain_block({0, 1, 0, 1}));
}

TEST_CASE("apply_machine recolors the orbit") {
  SUBCASE("identity keeps the machine") {
    const CellularAutomaton id = identity_ca(full_shift_sft(1, {"0", "1"}), 1);
    const RegularMachine ab(TreeSignature{1}, Alphabet({"0", "1"}), {"n0", "n1"}, {0, 1},
                            {{1}, {0}}, 0);
    const RegularMachine out = apply_machine(id, ab);
    CHECK(unroll(out, 4) == unroll(ab, 4));
  }
  SUBCASE("bit flip flips a constant machine") {
    const RegularMachine zero(TreeSignature{1}, Alphabet({"0", "1"}), {"n"}, {0}, {{0}}, 0);
    const RegularMachine out = apply_machine(bitflip_ca(), zero);
    CHECK(unroll(out, 3) == chain_block({1, 1, 1}));
  }
  SUBCASE("golden-to-even collapses the alternating machine") {
    const RegularMachine alt(TreeSignature{1}, Alphabet({"0", "1"}), {"n0", "n1"}, {0, 1},
                             {{1}, {0}}, 0);
    const RegularMachine out = apply_machine(golden_to_even_ca(), alt);
    CHECK(unroll(out, 4) == chain_block({0, 0, 0, 0}));
  }
  SUBCASE("machines outside the domain are rejected") {
    const RegularMachine ones(TreeSignature{1}, Alphabet({"0", "1"}), {"n"}, {1}, {{0}}, 0);
    CHECK_THROWS(apply_machine(golden_to_even_ca(), ones));
  }
}

TEST_CASE("apply_machine matches applying the rule to the unrolled block") {
  const CellularAutomaton tau = golden_to_even_ca();
  const RabinAutomaton golden = presentation(golden_mean_sft());
  for (const Pattern& p : blocks(golden_mean_sft(), 2)) {
    const auto run = find_run(golden, p);
    REQUIRE(run.has_value());
    const RegularMachine m = regular_approximation(golden, p, *run);
    const RegularMachine image = apply_machine(tau, m);
    for (int h = 1; h <= 4; ++h)
      CHECK(unroll(image, h) == apply_to_pattern(tau, unroll(m, h + tau.radius() - 1)));
  }
}
