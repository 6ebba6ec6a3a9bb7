#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "treeshift/cellular.hpp"
#include "treeshift/decide.hpp"

using namespace treeshift;
using namespace treeshift::testing;

TEST_CASE("rule tables must cover exactly the domain blocks") {
  SftSpec golden = golden_mean_sft();
  std::map<Pattern, int> table;
  table.emplace(chain_block({0, 0}), 1);
  table.emplace(chain_block({0, 1}), 0);
  CHECK_THROWS(CellularAutomaton(golden, Alphabet({"0", "1"}), 2, table));  // missing 10
  table.emplace(chain_block({1, 0}), 0);
  CHECK_NOTHROW(CellularAutomaton(golden, Alphabet({"0", "1"}), 2, table));
  table.emplace(chain_block({1, 1}), 1);
  CHECK_THROWS(CellularAutomaton(golden, Alphabet({"0", "1"}), 2, table));  // 11 not a block
}

TEST_CASE("apply_to_pattern evaluates the local rule") {
  SUBCASE("identity of window 1") {
    const CellularAutomaton id = identity_ca(full_shift_sft(2, {"a", "b"}), 1);
    const Pattern p(0, {Pattern(1), Pattern(0)});
    CHECK(apply_to_pattern(id, p) == p);
  }
  SUBCASE("golden mean to even shift on a word") {
    const CellularAutomaton tau = golden_to_even_ca();
    CHECK(apply_to_pattern(tau, chain_block({0, 1, 0, 1})) == chain_block({0, 0, 0}));
  }
  SUBCASE("xor rule on a word") {
    const CellularAutomaton tau = xor_ca();
    CHECK(apply_to_pattern(tau, chain_block({0, 0, 1, 0, 1})) == chain_block({1, 0, 0}));
  }
  SUBCASE("input outside the domain is reported") {
    const CellularAutomaton tau = golden_to_even_ca();
    CHECK_THROWS(apply_to_pattern(tau, chain_block({1, 1, 0})));
  }
}

TEST_CASE("locality: the rule commutes with taking subpatterns") {
  const CellularAutomaton tau = xor_ca();
  const SftSpec& x = tau.domain();
  const int n = tau.radius();
  const int m = 3;
  for (const Pattern& p : blocks(x, m + n - 1)) {
    const Pattern image = apply_to_pattern(tau, p);
    for (int j = 0; j <= m - 1; ++j) {
      const Word w(static_cast<std::size_t>(j), 0);
      const Pattern left = subpattern(image, w, delta(x.signature(), m - j));
      const Pattern right =
          apply_to_pattern(tau, subpattern(p, w, delta(x.signature(), m + n - 1 - j)));
      CHECK(left == right);
    }
  }
}

TEST_CASE("image automaton of the golden-to-even rule is the even presentation") {
  const RabinAutomaton img = image_automaton(golden_to_even_ca());
  REQUIRE(img.state_count() == 2);
  CHECK(img.state_name(0) == "0");
  CHECK(img.state_name(1) == "1");
  // loop on 0 labeled 1, 0 -> 1 labeled 0, 1 -> 0 labeled 0 (canonical order)
  const std::vector<Bundle> expected{Bundle{0, 0, {1}}, Bundle{0, 1, {0}}, Bundle{1, 0, {0}}};
  CHECK(img.bundles() == expected);
  CHECK(is_essential(img));
}

TEST_CASE("image automaton of the identity presents the domain") {
  const CellularAutomaton id = identity_ca(golden_mean_sft(), 2);
  const RabinAutomaton img = image_automaton(id);
  CHECK(equal_shifts(img, presentation(golden_mean_sft())).answer);
}

TEST_CASE("image automaton of a constant rule presents the single configuration") {
  const CellularAutomaton c0 = constant_ca(full_shift_sft(2, {"0", "1"}), 2, 0);
  const RabinAutomaton img = image_automaton(c0);
  for (const Pattern& p : all_patterns(TreeSignature{2}, 2, 3)) {
    bool all_zero = true;
    std::function<void(const Pattern&)> scan = [&](const Pattern& q) {
      if (q.label() != 0) all_zero = false;
      for (const auto& c : q.children()) scan(c);
    };
    scan(p);
    CHECK(accepts_pattern(img, p) == all_zero);
  }
}

TEST_CASE("image automaton is sound and complete at small heights") {
  const std::vector<CellularAutomaton> corpus{golden_to_even_ca(), xor_ca(),
                                              identity_ca(full_shift_sft(2, {"0", "1"}), 1)};
  for (const CellularAutomaton& tau : corpus) {
    const RabinAutomaton img = image_automaton(tau);
    const SftSpec& x = tau.domain();
    for (int m = 1; m <= 3; ++m) {
      // every image of a domain block is accepted
      std::set<Pattern> images;
      for (const Pattern& p : blocks(x, m + tau.radius() - 1)) {
        const Pattern q = apply_to_pattern(tau, p);
        images.insert(q);
        CHECK(accepts_pattern(img, q));
      }
      // every accepted block of this height arises from a domain block
      for (const Pattern& q : all_blocks(x.signature(), tau.target_alphabet().size(), m)) {
        if (accepts_pattern(img, q)) CHECK(images.count(q) == 1);
      }
    }
  }
}

TEST_CASE("bundle cover of the one-state full shift") {
  const RabinAutomaton full = full_shift_automaton(2, {"a", "b"});
  const SftCover cover = sft_cover(full);
  CHECK(cover.shift.alphabet().size() == 2);  // one letter per bundle
  CHECK(cover.shift.forbidden().empty());     // every gluing matches
  CHECK(cover.relabel.radius() == 1);
  CHECK(equal_shifts(image_automaton(cover.relabel), full).answer);
}

TEST_CASE("bundle cover relabels onto the accepted shift") {
  for (const RabinAutomaton& a :
       {monochromatic_automaton(), even_sum_automaton(), golden_mean_automaton()}) {
    const SftCover cover = sft_cover(a);
    CHECK(equal_shifts(image_automaton(cover.relabel), a).answer);
    // every cover block relabels to an accepted pattern
    for (const Pattern& p : blocks(cover.shift, 2))
      CHECK(accepts_pattern(a, apply_to_pattern(cover.relabel, p)));
  }
}

TEST_CASE("bundle cover of the golden mean presentation has three letters") {
  const SftCover cover = sft_cover(golden_mean_automaton());
  CHECK(cover.shift.alphabet().size() == 3);
  CHECK(blocks(cover.shift, 1).size() == 3);
}

TEST_CASE("composition with a relabeling") {
  SUBCASE("identity relabeling changes nothing but the domain") {
    const SftSpec full = full_shift_sft(1, {"0", "1"});
    const CellularAutomaton tau = xor_ca();
    const CellularAutomaton id = identity_ca(full, 1);
    const CellularAutomaton composite = compose_relabel(tau, id);
    CHECK(composite.radius() == tau.radius());
    CHECK(composite.table() == tau.table());
  }
  SUBCASE("golden cover followed by the golden-to-even rule presents the even shift") {
    const SftCover cover = sft_cover(golden_mean_automaton());
    const CellularAutomaton composite = compose_relabel(golden_to_even_ca(), cover.relabel);
    CHECK(equal_shifts(image_automaton(composite), even_shift_automaton()).answer);
  }
  SUBCASE("constant rule composed with a relabeling stays constant") {
    const SftCover cover = sft_cover(golden_mean_automaton());
    const CellularAutomaton constant = constant_ca(golden_mean_sft(), 2, 0);
    const CellularAutomaton composite = compose_relabel(constant, cover.relabel);
    for (const auto& [block, letter] : composite.table()) CHECK(letter == 0);
  }
}
