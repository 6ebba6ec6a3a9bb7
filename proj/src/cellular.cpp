#include "treeshift/cellular.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace treeshift {

CellularAutomaton::CellularAutomaton(SftSpec domain, Alphabet target, int radius,
                                     std::map<Pattern, int> table)
    : domain_(std::move(domain)),
      target_(std::move(target)),
      radius_(radius),
      table_(std::move(table)) {
  if (radius_ < 1) throw std::invalid_argument("memory radius must be at least 1");
  for (const auto& [block, out] : table_) {
    if (out < 0 || out >= target_.size())
      throw std::invalid_argument("rule output letter outside the target alphabet");
    if (!is_block(block) || !block.matches_arity(domain_.arity()) ||
        block.height() != radius_)
      throw std::invalid_argument("rule blocks must live on delta(radius)");
  }
  const std::vector<Pattern> expected = blocks(domain_, radius_);
  if (expected.size() != table_.size() ||
      !std::equal(expected.begin(), expected.end(), table_.begin(),
                  [](const Pattern& a, const auto& kv) { return a == kv.first; })) {
    throw std::invalid_argument("rule table must cover exactly the domain blocks of the rule size");
  }
}

int CellularAutomaton::lookup(const Pattern& block) const {
  const auto it = table_.find(block);
  if (it == table_.end())
    throw std::invalid_argument("block outside the rule table (not a domain block)");
  return it->second;
}

namespace {

Pattern apply_rec(const CellularAutomaton& tau, const Pattern& p, const FullSubtree& window,
                  int out_height) {
  const int out = tau.lookup(subpattern(p, Word{}, window));
  if (out_height == 1) return Pattern(out);
  std::vector<Pattern> kids;
  kids.reserve(p.children().size());
  for (const auto& c : p.children()) kids.push_back(apply_rec(tau, c, window, out_height - 1));
  return Pattern(out, std::move(kids));
}

}  // namespace

Pattern apply_to_pattern(const CellularAutomaton& tau, const Pattern& p) {
  if (!is_block(p) || !p.matches_arity(tau.domain().arity()))
    throw std::invalid_argument("apply_to_pattern expects a block of the domain");
  const int m = p.height() - tau.radius() + 1;
  if (m < 1)
    throw std::invalid_argument("input block shallower than the rule window");
  const FullSubtree window = delta(tau.domain().signature(), tau.radius());
  return apply_rec(tau, p, window, m);
}

RabinAutomaton image_automaton(const CellularAutomaton& tau) {
  const SftSpec& x = tau.domain();
  const TreeSignature sig = x.signature();
  const int k = sig.arity;
  const int n = std::max({tau.radius(), x.memory(), 2});

  const std::vector<Pattern> states = blocks(x, n - 1);
  const std::vector<Pattern> glued_ok = blocks(x, n);
  const std::set<Pattern> allowed(glued_ok.begin(), glued_ok.end());

  std::vector<std::string> names;
  names.reserve(states.size());
  for (const auto& s : states) names.push_back(block_state_name(s, x.alphabet()));

  std::vector<Bundle> bundles;
  const std::size_t m = states.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t src = 0; src < m; ++src) {
    const Pattern& p = states[src];
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      bool ok = true;
      if (n > 2) {
        for (int d = 0; d < k && ok; ++d)
          ok = truncate_block(states[idx[static_cast<std::size_t>(d)]], n - 2) ==
               p.children()[static_cast<std::size_t>(d)];
      }
      if (ok) {
        std::vector<Pattern> kids;
        kids.reserve(static_cast<std::size_t>(k));
        for (int d = 0; d < k; ++d) kids.push_back(states[idx[static_cast<std::size_t>(d)]]);
        Pattern glued(p.label(), std::move(kids));
        if (allowed.count(glued)) {
          Bundle t;
          t.source = static_cast<int>(src);
          t.label = tau.lookup(truncate_block(glued, tau.radius()));
          t.children.assign(idx.begin(), idx.end());
          bundles.push_back(std::move(t));
        }
      }
      int pos = k - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == m) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return RabinAutomaton(sig, tau.target_alphabet(), std::move(names), std::move(bundles));
}

SftCover sft_cover(const RabinAutomaton& a) {
  if (!is_essential(a))
    throw std::invalid_argument("sft_cover requires an essential automaton");
  if (a.bundles().empty())
    throw std::invalid_argument("sft_cover needs at least one bundle");
  const TreeSignature sig = a.signature();
  const int k = sig.arity;
  const std::size_t m = a.bundles().size();

  std::vector<std::string> letters;
  letters.reserve(m);
  for (std::size_t i = 0; i < m; ++i) letters.push_back("t" + std::to_string(i));
  Alphabet bundle_alphabet(std::move(letters));

  std::vector<Pattern> forbidden;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t root = 0; root < m; ++root) {
    const Bundle& rt = a.bundles()[root];
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      bool mismatch = false;
      for (int d = 0; d < k && !mismatch; ++d)
        mismatch = rt.children[static_cast<std::size_t>(d)] !=
                   a.bundles()[idx[static_cast<std::size_t>(d)]].source;
      if (mismatch) {
        std::vector<Pattern> kids;
        kids.reserve(static_cast<std::size_t>(k));
        for (int d = 0; d < k; ++d)
          kids.emplace_back(static_cast<int>(idx[static_cast<std::size_t>(d)]));
        forbidden.emplace_back(static_cast<int>(root), std::move(kids));
      }
      int pos = k - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == m) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  SftSpec z(sig, bundle_alphabet, 2, std::move(forbidden));

  std::map<Pattern, int> table;
  for (const Pattern& b : blocks(z, 1))
    table.emplace(b, a.bundles()[static_cast<std::size_t>(b.label())].label);
  CellularAutomaton relabel(z, a.alphabet(), 1, std::move(table));
  return SftCover{std::move(z), std::move(relabel)};
}

namespace {

Pattern relabel_block(const CellularAutomaton& prior, const Pattern& p) {
  const int out = prior.lookup(Pattern(p.label()));
  if (p.is_leaf()) return Pattern(out);
  std::vector<Pattern> kids;
  kids.reserve(p.children().size());
  for (const auto& c : p.children()) kids.push_back(relabel_block(prior, c));
  return Pattern(out, std::move(kids));
}

}  // namespace

CellularAutomaton compose_relabel(const CellularAutomaton& tau,
                                  const CellularAutomaton& prior) {
  if (prior.radius() != 1)
    throw std::invalid_argument("compose_relabel expects a one-cell relabeling in front");
  if (prior.target_alphabet() != tau.domain().alphabet())
    throw std::invalid_argument("relabeling target must match the outer domain alphabet");
  const SftSpec& z = prior.domain();
  std::map<Pattern, int> table;
  for (const Pattern& b : blocks(z, tau.radius()))
    table.emplace(b, tau.lookup(relabel_block(prior, b)));
  return CellularAutomaton(z, tau.target_alphabet(), tau.radius(), std::move(table));
}

}  // namespace treeshift
