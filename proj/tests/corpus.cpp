#include "corpus.hpp"

#include <map>
#include <stdexcept>

namespace treeshift::testing {

RabinAutomaton full_shift_automaton(int arity, std::vector<std::string> letters) {
  Alphabet alphabet(std::move(letters));
  std::vector<Bundle> bundles;
  for (int a = 0; a < alphabet.size(); ++a)
    bundles.push_back(Bundle{0, a, std::vector<int>(static_cast<std::size_t>(arity), 0)});
  return RabinAutomaton(TreeSignature{arity}, std::move(alphabet), {"s"}, std::move(bundles));
}

RabinAutomaton monochromatic_automaton() {
  return RabinAutomaton(TreeSignature{2}, Alphabet({"a", "b"}), {"a", "b"},
                        {Bundle{0, 0, {0, 0}}, Bundle{0, 0, {1, 1}},
                         Bundle{1, 1, {0, 0}}, Bundle{1, 1, {1, 1}}});
}

RabinAutomaton even_sum_automaton() {
  return RabinAutomaton(TreeSignature{2}, Alphabet({"0", "1"}), {"0", "1"},
                        {Bundle{0, 0, {0, 0}}, Bundle{0, 0, {1, 1}},
                         Bundle{1, 1, {0, 1}}, Bundle{1, 1, {1, 0}}});
}

RabinAutomaton golden_mean_automaton() {
  return RabinAutomaton(TreeSignature{1}, Alphabet({"0", "1"}), {"0", "1"},
                        {Bundle{0, 0, {0}}, Bundle{0, 0, {1}}, Bundle{1, 1, {0}}});
}

RabinAutomaton even_shift_automaton() {
  return RabinAutomaton(TreeSignature{1}, Alphabet({"0", "1"}), {"0", "1"},
                        {Bundle{0, 1, {0}}, Bundle{0, 0, {1}}, Bundle{1, 0, {0}}});
}

SftSpec golden_mean_sft() {
  const Pattern forbidden(1, {Pattern(1)});
  return normalize(TreeSignature{1}, Alphabet({"0", "1"}), {forbidden});
}

SftSpec full_shift_sft(int arity, std::vector<std::string> letters) {
  return SftSpec(TreeSignature{arity}, Alphabet(std::move(letters)), 1, {});
}

CellularAutomaton golden_to_even_ca() {
  SftSpec domain = golden_mean_sft();
  std::map<Pattern, int> table;
  table.emplace(chain_block({0, 0}), 1);
  table.emplace(chain_block({0, 1}), 0);
  table.emplace(chain_block({1, 0}), 0);
  return CellularAutomaton(std::move(domain), Alphabet({"0", "1"}), 2, std::move(table));
}

CellularAutomaton xor_ca() {
  SftSpec domain = full_shift_sft(1, {"0", "1"});
  std::map<Pattern, int> table;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2)
        table.emplace(chain_block({a0, a1, a2}), (a0 + a2) % 2);
  return CellularAutomaton(std::move(domain), Alphabet({"0", "1"}), 3, std::move(table));
}

CellularAutomaton bitflip_ca() {
  SftSpec domain = full_shift_sft(1, {"0", "1"});
  std::map<Pattern, int> table;
  table.emplace(Pattern(0), 1);
  table.emplace(Pattern(1), 0);
  return CellularAutomaton(std::move(domain), Alphabet({"0", "1"}), 1, std::move(table));
}

CellularAutomaton identity_ca(const SftSpec& domain, int radius) {
  std::map<Pattern, int> table;
  for (const Pattern& b : blocks(domain, radius)) table.emplace(b, b.label());
  return CellularAutomaton(domain, domain.alphabet(), radius, std::move(table));
}

CellularAutomaton constant_ca(const SftSpec& domain, int radius, int letter) {
  std::map<Pattern, int> table;
  for (const Pattern& b : blocks(domain, radius)) table.emplace(b, letter);
  return CellularAutomaton(domain, domain.alphabet(), radius, std::move(table));
}

Pattern chain_block(const std::vector<int>& labels) {
  if (labels.empty()) throw std::invalid_argument("chain needs at least one label");
  Pattern p(labels.back());
  for (std::size_t i = labels.size() - 1; i > 0; --i)
    p = Pattern(labels[i - 1], {std::move(p)});
  return p;
}

RabinAutomaton random_essential_automaton(std::mt19937_64& rng, int arity,
                                          int alphabet_size, int max_states) {
  std::vector<std::string> letters;
  for (int i = 0; i < alphabet_size; ++i) letters.push_back(std::to_string(i));
  while (true) {
    Alphabet alphabet(letters);
    std::uniform_int_distribution<int> state_count_dist(1, max_states);
    const int n = state_count_dist(rng);
    std::uniform_int_distribution<int> state_dist(0, n - 1);
    std::uniform_int_distribution<int> letter_dist(0, alphabet_size - 1);
    std::uniform_int_distribution<int> bundle_count_dist(1, 2 * n);
    const int m = bundle_count_dist(rng);
    std::vector<Bundle> bundles;
    for (int i = 0; i < m; ++i) {
      Bundle t;
      t.source = state_dist(rng);
      t.label = letter_dist(rng);
      for (int d = 0; d < arity; ++d) t.children.push_back(state_dist(rng));
      bundles.push_back(std::move(t));
    }
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
    RabinAutomaton a = essentialize(
        RabinAutomaton(TreeSignature{arity}, std::move(alphabet), std::move(names), std::move(bundles)));
    if (!a.empty()) return a;
  }
}

}  // namespace treeshift::testing
