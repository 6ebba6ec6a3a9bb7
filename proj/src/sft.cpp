#include "treeshift/sft.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace treeshift {

SftSpec::SftSpec(TreeSignature sig, Alphabet alphabet, int memory,
                 std::vector<Pattern> forbidden)
    : sig_(sig), alphabet_(std::move(alphabet)), memory_(memory), forbidden_(std::move(forbidden)) {
  if (sig_.arity < 1) throw std::invalid_argument("arity must be at least 1");
  if (memory_ < 1) throw std::invalid_argument("memory must be at least 1");
  for (const auto& b : forbidden_) {
    if (!is_block(b) || !b.matches_arity(sig_.arity) || b.height() != memory_)
      throw std::invalid_argument("forbidden blocks must live on delta(memory)");
    bool ok = true;
    std::function<void(const Pattern&)> scan = [&](const Pattern& q) {
      if (q.label() < 0 || q.label() >= alphabet_.size()) ok = false;
      for (const auto& c : q.children()) scan(c);
    };
    scan(b);
    if (!ok) throw std::invalid_argument("forbidden block letter outside the alphabet");
  }
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

SftSpec normalize(TreeSignature sig, const Alphabet& alphabet,
                  const std::vector<Pattern>& raw, int declared_memory) {
  for (const auto& b : raw) {
    if (!is_block(b) || !b.matches_arity(sig.arity))
      throw std::invalid_argument("forbidden patterns must be blocks on some delta(n)");
  }
  int memory = std::max(declared_memory, 1);
  for (const auto& b : raw) memory = std::max(memory, b.height());
  std::vector<Pattern> forbidden = extend_blocks(sig, alphabet, raw, memory);
  return SftSpec(sig, alphabet, memory, std::move(forbidden));
}

std::string block_state_name(const Pattern& p, const Alphabet& alphabet) {
  std::string out = alphabet.token(p.label());
  for (const auto& c : p.children()) out += "." + block_state_name(c, alphabet);
  return out;
}

RabinAutomaton presentation(const SftSpec& x) {
  const TreeSignature sig = x.signature();
  const int k = sig.arity;
  const int np = std::max(x.memory(), 2);

  std::vector<Pattern> forb = x.forbidden();
  if (x.memory() < np) forb = extend_blocks(sig, x.alphabet(), forb, np);
  const std::set<Pattern> forbidden(forb.begin(), forb.end());

  const std::vector<Pattern> states = all_blocks(sig, x.alphabet().size(), np - 1);
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
      if (np > 2) {
        for (int d = 0; d < k && ok; ++d)
          ok = truncate_block(states[idx[static_cast<std::size_t>(d)]], np - 2) ==
               p.children()[static_cast<std::size_t>(d)];
      }
      if (ok) {
        std::vector<Pattern> kids;
        kids.reserve(static_cast<std::size_t>(k));
        for (int d = 0; d < k; ++d) kids.push_back(states[idx[static_cast<std::size_t>(d)]]);
        Pattern glued(p.label(), std::move(kids));
        if (!forbidden.count(glued)) {
          Bundle t;
          t.source = static_cast<int>(src);
          t.label = p.label();
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
  RabinAutomaton naive(sig, x.alphabet(), std::move(names), std::move(bundles));
  return essentialize(naive);
}

std::vector<Pattern> blocks(const SftSpec& x, int n) {
  if (n < 1) throw std::invalid_argument("block size must be at least 1");
  const RabinAutomaton pres = presentation(x);
  std::vector<Pattern> out;
  for_each_block(x.signature(), x.alphabet().size(), n, [&](const Pattern& b) {
    if (accepts_pattern(pres, b)) out.push_back(b);
  });
  return out;
}

}  // namespace treeshift
