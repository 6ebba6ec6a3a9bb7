#include "treeshift/fta.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace treeshift {

FiniteTreeAutomaton::FiniteTreeAutomaton(RabinAutomaton base, std::vector<int> initial,
                                         int final_state)
    : base_(std::move(base)), initial_(std::move(initial)), final_(final_state) {
  for (int s : initial_)
    if (s < 0 || s >= base_.state_count())
      throw std::invalid_argument("initial state out of range");
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  if (final_ < 0 || final_ >= base_.state_count())
    throw std::invalid_argument("final state out of range");
}

namespace {

void check_pattern(const RabinAutomaton& a, const Pattern& p) {
  if (!p.matches_arity(a.arity()))
    throw std::invalid_argument("pattern arity does not match the automaton");
  std::function<void(const Pattern&)> scan = [&](const Pattern& q) {
    if (q.label() < 0 || q.label() >= a.alphabet().size())
      throw std::invalid_argument("pattern letter outside the automaton alphabet");
    for (const auto& c : q.children()) scan(c);
  };
  scan(p);
}

std::vector<char> fta_possible(const FiniteTreeAutomaton& b, const Pattern& p) {
  const RabinAutomaton& a = b.base();
  std::vector<std::vector<char>> kids;
  kids.reserve(p.children().size());
  for (const auto& c : p.children()) kids.push_back(fta_possible(b, c));
  std::vector<char> poss(static_cast<std::size_t>(a.state_count()), 0);
  const bool leaf = p.is_leaf();
  for (const Bundle& t : a.bundles()) {
    if (t.label != p.label()) continue;
    bool ok = true;
    for (std::size_t s = 0; s < t.children.size(); ++s) {
      const int c = t.children[s];
      if (leaf ? (c != b.final_state()) : !kids[s][static_cast<std::size_t>(c)]) {
        ok = false;
        break;
      }
    }
    if (ok) poss[static_cast<std::size_t>(t.source)] = 1;
  }
  return poss;
}

}  // namespace

bool fta_accepts(const FiniteTreeAutomaton& b, const Pattern& p) {
  check_pattern(b.base(), p);
  const std::vector<char> poss = fta_possible(b, p);
  return std::any_of(b.initial().begin(), b.initial().end(),
                     [&](int s) { return poss[static_cast<std::size_t>(s)] != 0; });
}

namespace {

std::string subset_name(const RabinAutomaton& a, const std::vector<int>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i > 0) out += ",";
    out += a.state_name(members[i]);
  }
  out += "}";
  return out;
}

struct SubsetAutomaton {
  std::vector<std::vector<int>> subsets;  // index -> sorted member states
  std::vector<Bundle> bundles;
};

/// Source closure of the full state set: repeatedly, for every tuple of
/// known subsets and every letter, the set of sources of matching bundles.
/// These are exactly the subsets that bottom-up runs can produce.
SubsetAutomaton subset_construction(const RabinAutomaton& a) {
  SubsetAutomaton out;
  const int k = a.arity();
  std::map<std::vector<int>, int> index_of;
  auto intern = [&](std::vector<int> members) {
    const auto it = index_of.find(members);
    if (it != index_of.end()) return it->second;
    const int id = static_cast<int>(out.subsets.size());
    index_of.emplace(members, id);
    out.subsets.push_back(std::move(members));
    return id;
  };
  std::vector<int> full(static_cast<std::size_t>(a.state_count()));
  for (int s = 0; s < a.state_count(); ++s) full[static_cast<std::size_t>(s)] = s;
  intern(std::move(full));

  std::set<std::pair<std::vector<int>, int>> processed;  // (children subset ids, label)
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t m = out.subsets.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    while (true) {
      for (int label = 0; label < a.alphabet().size(); ++label) {
        std::vector<int> key(idx.begin(), idx.end());
        if (processed.count({key, label})) continue;
        processed.insert({key, label});
        std::set<int> sources;
        for (const Bundle& t : a.bundles()) {
          if (t.label != label) continue;
          bool ok = true;
          for (std::size_t d = 0; d < t.children.size(); ++d) {
            const std::vector<int>& allowed = out.subsets[idx[d]];
            if (!std::binary_search(allowed.begin(), allowed.end(), t.children[d])) {
              ok = false;
              break;
            }
          }
          if (ok) sources.insert(t.source);
        }
        if (sources.empty()) continue;
        const std::size_t before = out.subsets.size();
        Bundle nt;
        nt.source = intern(std::vector<int>(sources.begin(), sources.end()));
        nt.label = label;
        nt.children.assign(key.begin(), key.end());
        out.bundles.push_back(std::move(nt));
        if (out.subsets.size() != before) changed = true;
      }
      int pos = k - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == m) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return out;
}

RabinAutomaton subset_to_rabin(const RabinAutomaton& a, SubsetAutomaton&& sub) {
  std::vector<std::string> names;
  names.reserve(sub.subsets.size());
  for (const auto& members : sub.subsets) names.push_back(subset_name(a, members));
  return RabinAutomaton(a.signature(), a.alphabet(), std::move(names),
                        std::move(sub.bundles));
}

}  // namespace

RabinAutomaton codeterminize(const RabinAutomaton& input) {
  RabinAutomaton a = essentialize(input);
  if (a.empty()) return a;
  return subset_to_rabin(a, subset_construction(a));
}

FiniteTreeAutomaton full_pattern_fta(const RabinAutomaton& input) {
  RabinAutomaton a = essentialize(input);
  if (a.empty()) {
    RabinAutomaton base(a.signature(), a.alphabet(), {"{}"}, {});
    return FiniteTreeAutomaton(std::move(base), {}, 0);
  }
  RabinAutomaton cod = subset_to_rabin(a, subset_construction(a));
  std::vector<int> initial(static_cast<std::size_t>(cod.state_count()));
  for (int s = 0; s < cod.state_count(); ++s) initial[static_cast<std::size_t>(s)] = s;
  // The full state set is interned first by the construction.
  return FiniteTreeAutomaton(std::move(cod), std::move(initial), 0);
}

FiniteTreeAutomaton complement_fta(const FiniteTreeAutomaton& b) {
  const RabinAutomaton& a = b.base();
  if (!is_codeterministic(a))
    throw std::invalid_argument("complement_fta requires a co-deterministic base");
  const int k = a.arity();
  std::vector<std::string> names = a.state_names();
  std::string sink = "K";
  {
    std::set<std::string> seen(names.begin(), names.end());
    while (seen.count(sink)) sink += "'";
  }
  names.push_back(sink);
  const int sink_id = static_cast<int>(names.size()) - 1;

  std::set<std::pair<std::vector<int>, int>> present;
  for (const Bundle& t : a.bundles()) present.insert({t.children, t.label});

  std::vector<Bundle> bundles = a.bundles();
  const std::size_t m = static_cast<std::size_t>(sink_id) + 1;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<int> children(idx.begin(), idx.end());
    for (int label = 0; label < a.alphabet().size(); ++label) {
      if (!present.count({children, label}))
        bundles.push_back(Bundle{sink_id, label, children});
    }
    int pos = k - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == m) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }

  std::vector<int> initial;
  std::vector<char> is_initial(static_cast<std::size_t>(a.state_count()), 0);
  for (int s : b.initial()) is_initial[static_cast<std::size_t>(s)] = 1;
  for (int s = 0; s < a.state_count(); ++s)
    if (!is_initial[static_cast<std::size_t>(s)]) initial.push_back(s);
  initial.push_back(sink_id);

  RabinAutomaton base(a.signature(), a.alphabet(), std::move(names), std::move(bundles));
  return FiniteTreeAutomaton(std::move(base), std::move(initial), b.final_state());
}

FiniteTreeAutomaton complement_of_shift(const RabinAutomaton& a) {
  return complement_fta(full_pattern_fta(a));
}

namespace {

/// Entering round of each state in the productivity fixpoint, or INT_MAX.
/// A state enters at round 1 via a bundle whose terminals are all final,
/// and later via a bundle whose terminals all entered earlier.
std::vector<int> productivity_rounds(const FiniteTreeAutomaton& b) {
  const RabinAutomaton& a = b.base();
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> round(static_cast<std::size_t>(a.state_count()), inf);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Bundle& t : a.bundles()) {
      int candidate = inf;
      bool all_final = true;
      int deepest = 0;
      bool all_productive = true;
      for (int c : t.children) {
        if (c != b.final_state()) all_final = false;
        const int r = round[static_cast<std::size_t>(c)];
        if (r == inf) all_productive = false;
        else deepest = std::max(deepest, r);
      }
      if (all_final) candidate = 1;
      if (all_productive) candidate = std::min(candidate, deepest + 1);
      if (candidate < round[static_cast<std::size_t>(t.source)]) {
        round[static_cast<std::size_t>(t.source)] = candidate;
        changed = true;
      }
    }
  }
  return round;
}

}  // namespace

bool fta_is_empty(const FiniteTreeAutomaton& b) {
  const std::vector<int> round = productivity_rounds(b);
  const int inf = std::numeric_limits<int>::max();
  return std::none_of(b.initial().begin(), b.initial().end(),
                      [&](int s) { return round[static_cast<std::size_t>(s)] != inf; });
}

bool fta_is_empty_scan(const FiniteTreeAutomaton& b) {
  bool found = false;
  for_each_pattern(b.base().signature(), b.base().alphabet().size(),
                   b.base().state_count(), [&](const Pattern& p) {
                     if (!found && fta_accepts(b, p)) found = true;
                   });
  return !found;
}

namespace {

Pattern witness_from(const FiniteTreeAutomaton& b, const std::vector<int>& round, int state) {
  const RabinAutomaton& a = b.base();
  const int inf = std::numeric_limits<int>::max();
  const int target = round[static_cast<std::size_t>(state)];
  for (const Bundle& t : a.bundles_from(state)) {
    if (target == 1) {
      const bool all_final = std::all_of(t.children.begin(), t.children.end(),
                                         [&](int c) { return c == b.final_state(); });
      if (all_final) return Pattern(t.label);
    } else {
      bool ok = true;
      int deepest = 0;
      for (int c : t.children) {
        const int r = round[static_cast<std::size_t>(c)];
        if (r == inf) {
          ok = false;
          break;
        }
        deepest = std::max(deepest, r);
      }
      if (ok && deepest + 1 == target) {
        std::vector<Pattern> kids;
        kids.reserve(t.children.size());
        for (int c : t.children) kids.push_back(witness_from(b, round, c));
        return Pattern(t.label, std::move(kids));
      }
    }
  }
  throw std::logic_error("witness extraction lost a productive bundle");
}

}  // namespace

std::optional<Pattern> fta_witness(const FiniteTreeAutomaton& b) {
  const std::vector<int> round = productivity_rounds(b);
  const int inf = std::numeric_limits<int>::max();
  int best = -1;
  for (int s : b.initial()) {
    if (round[static_cast<std::size_t>(s)] == inf) continue;
    if (best < 0 || round[static_cast<std::size_t>(s)] < round[static_cast<std::size_t>(best)])
      best = s;
  }
  if (best < 0) return std::nullopt;
  return witness_from(b, round, best);
}

}  // namespace treeshift
