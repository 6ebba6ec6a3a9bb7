#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "treeshift/fta.hpp"

using namespace treeshift;
using namespace treeshift::testing;

namespace {

Pattern pat2(int root, int left, int right) {
  return Pattern(root, {Pattern(left), Pattern(right)});
}

std::vector<RabinAutomaton> small_corpus() {
  return {full_shift_automaton(2, {"a", "b"}), full_shift_automaton(1, {"0", "1"}),
          monochromatic_automaton(), even_sum_automaton(), golden_mean_automaton(),
          even_shift_automaton()};
}

}  // namespace

TEST_CASE("fta acceptance basics") {
  // one state, loop labeled a; final state F without own requirements
  const RabinAutomaton base(TreeSignature{2}, Alphabet({"a", "b"}), {"s", "F"},
                            {Bundle{0, 0, {1, 1}}, Bundle{1, 0, {1, 1}}});
  SUBCASE("height-1 pattern needs one bundle into the final pair") {
    const FiniteTreeAutomaton b(base, {0, 1}, 1);
    CHECK(fta_accepts(b, Pattern(0)));
    CHECK_FALSE(fta_accepts(b, Pattern(1)));
  }
  SUBCASE("empty initial set accepts nothing") {
    const FiniteTreeAutomaton b(base, {}, 1);
    CHECK_FALSE(fta_accepts(b, Pattern(0)));
    CHECK(fta_is_empty(b));
  }
}

TEST_CASE("fta acceptance agrees with the search oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int round = 0; round < 20; ++round) {
    const RabinAutomaton base = random_essential_automaton(rng, 2, 2, 3);
    std::vector<int> initial;
    for (int s = 0; s < base.state_count(); ++s)
      if (coin(rng)) initial.push_back(s);
    std::uniform_int_distribution<int> st(0, base.state_count() - 1);
    const FiniteTreeAutomaton b(base, initial, st(rng));
    for (const Pattern& p : all_patterns(TreeSignature{2}, 2, 3))
      CHECK(fta_accepts(b, p) == oracle_fta_accepts(b, p));
  }
}

TEST_CASE("subset construction is co-deterministic and keeps the shift") {
  for (const RabinAutomaton& a : small_corpus()) {
    const RabinAutomaton cod = codeterminize(a);
    CHECK(is_codeterministic(cod));
    for (const Pattern& p : all_patterns(a.signature(), a.alphabet().size(), 3))
      CHECK(accepts_pattern(cod, p) == accepts_pattern(a, p));
  }
}

TEST_CASE("subset construction on an already co-deterministic automaton stays small") {
  const RabinAutomaton golden = golden_mean_automaton();
  const RabinAutomaton cod = codeterminize(golden);
  CHECK(cod.state_count() == 3);  // {0,1}, {0}, {1}
  CHECK(cod.state_name(0) == "{0,1}");
}

TEST_CASE("full pattern automaton matches shift membership") {
  SUBCASE("full shift accepts everything") {
    const FiniteTreeAutomaton b = full_pattern_fta(full_shift_automaton(2, {"a", "b"}));
    for (const Pattern& p : all_patterns(TreeSignature{2}, 2, 3)) CHECK(fta_accepts(b, p));
  }
  SUBCASE("monochromatic memberships") {
    const FiniteTreeAutomaton b = full_pattern_fta(monochromatic_automaton());
    CHECK(fta_accepts(b, pat2(0, 0, 0)));
    CHECK_FALSE(fta_accepts(b, pat2(0, 0, 1)));
  }
  SUBCASE("even-sum memberships") {
    const FiniteTreeAutomaton b = full_pattern_fta(even_sum_automaton());
    CHECK(fta_accepts(b, pat2(0, 1, 1)));
    CHECK_FALSE(fta_accepts(b, pat2(0, 0, 1)));
  }
  SUBCASE("agrees with plain acceptance everywhere") {
    for (const RabinAutomaton& a : small_corpus()) {
      const FiniteTreeAutomaton b = full_pattern_fta(a);
      for (const Pattern& p : all_patterns(a.signature(), a.alphabet().size(), 3))
        CHECK(fta_accepts(b, p) == accepts_pattern(a, p));
    }
  }
}

TEST_CASE("complement flips acceptance") {
  for (const RabinAutomaton& a : small_corpus()) {
    const FiniteTreeAutomaton c = complement_of_shift(a);
    CHECK(is_codeterministic(c.base()));
    CHECK(is_cocomplete(c.base()));
    for (const Pattern& p : all_patterns(a.signature(), a.alphabet().size(), 3))
      CHECK(fta_accepts(c, p) != accepts_pattern(a, p));
  }
}

TEST_CASE("complement of the complement accepts the original pattern set") {
  const FiniteTreeAutomaton b = full_pattern_fta(monochromatic_automaton());
  const FiniteTreeAutomaton cc = complement_fta(complement_fta(b));
  for (const Pattern& p : all_patterns(TreeSignature{2}, 2, 3))
    CHECK(fta_accepts(cc, p) == fta_accepts(b, p));
}

TEST_CASE("complement of a full shift accepts nothing") {
  const FiniteTreeAutomaton c = complement_of_shift(full_shift_automaton(2, {"a", "b"}));
  CHECK(fta_is_empty(c));
  CHECK(fta_is_empty_scan(c) == fta_is_empty(c));
  CHECK_FALSE(fta_witness(c).has_value());
}

TEST_CASE("complement of the empty automaton accepts everything") {
  const RabinAutomaton empty(TreeSignature{2}, Alphabet({"a", "b"}), {}, {});
  const FiniteTreeAutomaton c = complement_of_shift(empty);
  for (const Pattern& p : all_patterns(TreeSignature{2}, 2, 2)) CHECK(fta_accepts(c, p));
  CHECK_FALSE(fta_is_empty(c));
}

TEST_CASE("complement of the golden mean presentation") {
  const FiniteTreeAutomaton c = complement_of_shift(golden_mean_automaton());
  CHECK(fta_accepts(c, chain_block({1, 1})));
  CHECK_FALSE(fta_accepts(c, chain_block({0, 0})));
  CHECK_FALSE(fta_is_empty(c));
  const auto w = fta_witness(c);
  REQUIRE(w.has_value());
  CHECK(fta_accepts(c, *w));
  CHECK(w->height() <= c.base().state_count());
}

TEST_CASE("partition: shift patterns versus complement patterns") {
  for (const RabinAutomaton& a : small_corpus()) {
    const FiniteTreeAutomaton keep = full_pattern_fta(a);
    const FiniteTreeAutomaton drop = complement_of_shift(a);
    for (const Pattern& p : all_patterns(a.signature(), a.alphabet().size(), 3)) {
      const int hits = (fta_accepts(keep, p) ? 1 : 0) + (fta_accepts(drop, p) ? 1 : 0);
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("complement requires a co-deterministic base") {
  const FiniteTreeAutomaton b(monochromatic_automaton(), {0}, 1);
  CHECK_NOTHROW(complement_fta(b));
  const RabinAutomaton noncodet(TreeSignature{1}, Alphabet({"a", "b"}), {"s", "t"},
                                {Bundle{0, 0, {0}}, Bundle{1, 0, {0}}});
  CHECK_THROWS(complement_fta(FiniteTreeAutomaton(noncodet, {0}, 1)));
}

TEST_CASE("emptiness fixpoint matches the exhaustive scan") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coin(0, 1);
  int nonempty_seen = 0;
  for (int round = 0; round < 40; ++round) {
    const int arity = 1 + coin(rng);
    const RabinAutomaton base = random_essential_automaton(rng, arity, 2, 3);
    std::vector<int> initial;
    for (int s = 0; s < base.state_count(); ++s)
      if (coin(rng)) initial.push_back(s);
    std::uniform_int_distribution<int> st(0, base.state_count() - 1);
    const FiniteTreeAutomaton b(base, initial, st(rng));
    const bool empty = fta_is_empty(b);
    CHECK(empty == fta_is_empty_scan(b));
    if (!empty) {
      ++nonempty_seen;
      const auto w = fta_witness(b);
      REQUIRE(w.has_value());
      CHECK(fta_accepts(b, *w));
      CHECK(oracle_fta_accepts(b, *w));
      CHECK(w->height() <= base.state_count());
    } else {
      CHECK_FALSE(fta_witness(b).has_value());
    }
  }
  CHECK(nonempty_seen > 0);
}

TEST_CASE("witness for a full-shift pattern automaton has height one") {
  const FiniteTreeAutomaton b = full_pattern_fta(full_shift_automaton(2, {"a", "b"}));
  const auto w = fta_witness(b);
  REQUIRE(w.has_value());
  CHECK(w->height() == 1);
}
