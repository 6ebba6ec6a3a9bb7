#include "treeshift/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace treeshift {

RabinAutomaton::RabinAutomaton(TreeSignature sig, Alphabet alphabet,
                               std::vector<std::string> state_names,
                               std::vector<Bundle> bundles)
    : sig_(sig),
      alphabet_(std::move(alphabet)),
      state_names_(std::move(state_names)),
      bundles_(std::move(bundles)) {
  if (sig_.arity < 1) throw std::invalid_argument("arity must be at least 1");
  for (const auto& n : state_names_) {
    if (n.empty()) throw std::invalid_argument("state names must be nonempty");
  }
  {
    std::set<std::string_view> seen;
    for (const auto& n : state_names_)
      if (!seen.insert(n).second)
        throw std::invalid_argument("duplicate state name: '" + n + "'");
  }
  const int n = state_count();
  for (const auto& t : bundles_) {
    if (t.source < 0 || t.source >= n)
      throw std::invalid_argument("bundle source out of range");
    if (t.label < 0 || t.label >= alphabet_.size())
      throw std::invalid_argument("bundle label out of range");
    if (static_cast<int>(t.children.size()) != sig_.arity)
      throw std::invalid_argument("bundle must have one terminal per direction");
    for (int c : t.children)
      if (c < 0 || c >= n) throw std::invalid_argument("bundle terminal out of range");
  }
  std::sort(bundles_.begin(), bundles_.end());
  bundles_.erase(std::unique(bundles_.begin(), bundles_.end()), bundles_.end());
  from_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& t : bundles_) ++from_offsets_[static_cast<std::size_t>(t.source) + 1];
  for (std::size_t i = 1; i < from_offsets_.size(); ++i)
    from_offsets_[i] += from_offsets_[i - 1];
}

const std::string& RabinAutomaton::state_name(int s) const {
  if (s < 0 || s >= state_count()) throw std::out_of_range("state index out of range");
  return state_names_[static_cast<std::size_t>(s)];
}

std::optional<int> RabinAutomaton::state_index(std::string_view name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    if (state_names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::span<const Bundle> RabinAutomaton::bundles_from(int state) const {
  if (state < 0 || state >= state_count())
    throw std::out_of_range("state index out of range");
  const std::size_t lo = from_offsets_[static_cast<std::size_t>(state)];
  const std::size_t hi = from_offsets_[static_cast<std::size_t>(state) + 1];
  return {bundles_.data() + lo, hi - lo};
}

namespace {

void check_pattern(const RabinAutomaton& a, const Pattern& p) {
  if (!p.matches_arity(a.arity()))
    throw std::invalid_argument("pattern arity does not match the automaton");
  int max_label = 0;
  std::function<void(const Pattern&)> scan = [&](const Pattern& q) {
    max_label = std::max(max_label, q.label());
    for (const auto& c : q.children()) scan(c);
  };
  scan(p);
  if (max_label >= a.alphabet().size())
    throw std::invalid_argument("pattern letter outside the automaton alphabet");
}

struct PossNode {
  std::vector<char> poss;
  std::vector<PossNode> kids;
};

PossNode compute_possible(const RabinAutomaton& a, const Pattern& p) {
  PossNode node;
  node.kids.reserve(p.children().size());
  for (const auto& c : p.children()) node.kids.push_back(compute_possible(a, c));
  node.poss.assign(static_cast<std::size_t>(a.state_count()), 0);
  const bool leaf = p.is_leaf();
  for (const Bundle& t : a.bundles()) {
    if (t.label != p.label()) continue;
    bool ok = true;
    if (!leaf) {
      for (std::size_t s = 0; s < t.children.size(); ++s) {
        if (!node.kids[s].poss[static_cast<std::size_t>(t.children[s])]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) node.poss[static_cast<std::size_t>(t.source)] = 1;
  }
  return node;
}

void extract_run(const RabinAutomaton& a, const Pattern& p, const PossNode& poss,
                 int state, const Word& at, std::map<Word, int>& out) {
  out[at] = state;
  for (const Bundle& t : a.bundles_from(state)) {
    if (t.label != p.label()) continue;
    bool ok = true;
    if (!p.is_leaf()) {
      for (std::size_t s = 0; s < t.children.size(); ++s) {
        if (!poss.kids[s].poss[static_cast<std::size_t>(t.children[s])]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    for (std::size_t s = 0; s < t.children.size(); ++s) {
      Word next = at;
      next.push_back(static_cast<int>(s));
      if (p.is_leaf()) {
        out[next] = t.children[s];
      } else {
        extract_run(a, p.children()[s], poss.kids[s], t.children[s], next, out);
      }
    }
    return;
  }
  throw std::logic_error("run extraction lost a possible state");
}

}  // namespace

bool accepts_pattern(const RabinAutomaton& a, const Pattern& p) {
  check_pattern(a, p);
  if (a.empty()) return false;
  const PossNode root = compute_possible(a, p);
  return std::find(root.poss.begin(), root.poss.end(), 1) != root.poss.end();
}

std::optional<RunAssignment> find_run(const RabinAutomaton& a, const Pattern& p) {
  check_pattern(a, p);
  if (a.empty()) return std::nullopt;
  const PossNode root = compute_possible(a, p);
  const auto it = std::find(root.poss.begin(), root.poss.end(), 1);
  if (it == root.poss.end()) return std::nullopt;
  RunAssignment run;
  extract_run(a, p, root, static_cast<int>(it - root.poss.begin()), Word{}, run.states);
  return run;
}

bool is_essential(const RabinAutomaton& a) {
  for (int s = 0; s < a.state_count(); ++s)
    if (a.bundles_from(s).empty()) return false;
  return true;
}

std::vector<int> essential_states(const RabinAutomaton& a) {
  const int n = a.state_count();
  std::vector<char> keep(static_cast<std::size_t>(n), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (!keep[static_cast<std::size_t>(s)]) continue;
      bool has_bundle = false;
      for (const Bundle& t : a.bundles_from(s)) {
        bool alive = true;
        for (int c : t.children) {
          if (!keep[static_cast<std::size_t>(c)]) {
            alive = false;
            break;
          }
        }
        if (alive) {
          has_bundle = true;
          break;
        }
      }
      if (!has_bundle) {
        keep[static_cast<std::size_t>(s)] = 0;
        changed = true;
      }
    }
  }
  std::vector<int> out;
  for (int s = 0; s < n; ++s)
    if (keep[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

RabinAutomaton essentialize(const RabinAutomaton& a) {
  const int n = a.state_count();
  const std::vector<int> kept = essential_states(a);
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  std::vector<std::string> names;
  for (int s : kept) {
    remap[static_cast<std::size_t>(s)] = static_cast<int>(names.size());
    names.push_back(a.state_name(s));
  }
  std::vector<Bundle> bundles;
  for (const Bundle& t : a.bundles()) {
    if (remap[static_cast<std::size_t>(t.source)] < 0) continue;
    bool alive = true;
    Bundle nt;
    nt.source = remap[static_cast<std::size_t>(t.source)];
    nt.label = t.label;
    nt.children.reserve(t.children.size());
    for (int c : t.children) {
      const int r = remap[static_cast<std::size_t>(c)];
      if (r < 0) {
        alive = false;
        break;
      }
      nt.children.push_back(r);
    }
    if (alive) bundles.push_back(std::move(nt));
  }
  return RabinAutomaton(a.signature(), a.alphabet(), std::move(names), std::move(bundles));
}

bool is_deterministic(const RabinAutomaton& a) {
  std::set<std::pair<int, int>> seen;
  for (const Bundle& t : a.bundles())
    if (!seen.insert({t.source, t.label}).second) return false;
  return true;
}

bool is_codeterministic(const RabinAutomaton& a) {
  std::set<std::pair<std::vector<int>, int>> seen;
  for (const Bundle& t : a.bundles())
    if (!seen.insert({t.children, t.label}).second) return false;
  return true;
}

bool is_cocomplete(const RabinAutomaton& a) {
  if (a.empty()) return true;
  std::set<std::pair<std::vector<int>, int>> seen;
  for (const Bundle& t : a.bundles()) seen.insert({t.children, t.label});
  std::size_t combos = static_cast<std::size_t>(a.alphabet().size());
  for (int i = 0; i < a.arity(); ++i)
    combos *= static_cast<std::size_t>(a.state_count());
  return seen.size() == combos;
}

RabinAutomaton join(const RabinAutomaton& a, const RabinAutomaton& b) {
  if (a.signature() != b.signature())
    throw std::invalid_argument("join requires equal arities");
  if (a.alphabet() != b.alphabet())
    throw std::invalid_argument("join requires equal alphabets");
  const int nb = b.state_count();
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(a.state_count()) * static_cast<std::size_t>(nb));
  for (int i = 0; i < a.state_count(); ++i)
    for (int j = 0; j < nb; ++j)
      names.push_back("(" + a.state_name(i) + "," + b.state_name(j) + ")");
  std::vector<Bundle> bundles;
  for (const Bundle& ta : a.bundles()) {
    for (const Bundle& tb : b.bundles()) {
      if (ta.label != tb.label) continue;
      Bundle t;
      t.source = ta.source * nb + tb.source;
      t.label = ta.label;
      t.children.reserve(ta.children.size());
      for (std::size_t s = 0; s < ta.children.size(); ++s)
        t.children.push_back(ta.children[s] * nb + tb.children[s]);
      bundles.push_back(std::move(t));
    }
  }
  return RabinAutomaton(a.signature(), a.alphabet(), std::move(names), std::move(bundles));
}

namespace {

std::vector<std::vector<int>> successor_graph(const RabinAutomaton& a) {
  std::vector<std::vector<int>> g(static_cast<std::size_t>(a.state_count()));
  for (const Bundle& t : a.bundles())
    for (int c : t.children) g[static_cast<std::size_t>(t.source)].push_back(c);
  return g;
}

std::vector<char> reachable_from(const std::vector<std::vector<int>>& g, int start) {
  std::vector<char> seen(g.size(), 0);
  std::deque<int> queue{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int c : g[static_cast<std::size_t>(s)]) {
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        queue.push_back(c);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_strongly_connected(const RabinAutomaton& a) {
  const int n = a.state_count();
  if (n == 0) return true;
  const auto g = successor_graph(a);
  std::vector<std::vector<int>> rg(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    for (int c : g[static_cast<std::size_t>(s)]) rg[static_cast<std::size_t>(c)].push_back(s);
  const auto fwd = reachable_from(g, 0);
  const auto bwd = reachable_from(rg, 0);
  for (int s = 0; s < n; ++s)
    if (!fwd[static_cast<std::size_t>(s)] || !bwd[static_cast<std::size_t>(s)]) return false;
  return true;
}

namespace {

struct PathStep {
  int bundle = -1;
  int direction = -1;
};

/// Shortest bundle path between two states: per state on the path, the
/// bundle taken and the direction followed. BFS with bundles scanned in
/// canonical order, so the result is deterministic.
std::optional<std::vector<PathStep>> bundle_path(const RabinAutomaton& a, int from, int to) {
  const int n = a.state_count();
  std::vector<int> prev_state(static_cast<std::size_t>(n), -1);
  std::vector<PathStep> prev_step(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  if (from == to) return std::vector<PathStep>{};
  std::deque<int> queue{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    const auto from_s = a.bundles_from(s);
    for (std::size_t bi = 0; bi < from_s.size(); ++bi) {
      const Bundle& t = from_s[bi];
      const int global_index =
          static_cast<int>(&t - a.bundles().data());
      for (std::size_t d = 0; d < t.children.size(); ++d) {
        const int c = t.children[d];
        if (seen[static_cast<std::size_t>(c)]) continue;
        seen[static_cast<std::size_t>(c)] = 1;
        prev_state[static_cast<std::size_t>(c)] = s;
        prev_step[static_cast<std::size_t>(c)] = {global_index, static_cast<int>(d)};
        if (c == to) {
          std::vector<PathStep> path;
          for (int cur = c; cur != from; cur = prev_state[static_cast<std::size_t>(cur)])
            path.push_back(prev_step[static_cast<std::size_t>(cur)]);
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(c);
      }
    }
  }
  return std::nullopt;
}

Pattern tree_from_labels(const std::map<Word, int>& labels, const Word& at, int arity) {
  std::vector<Pattern> kids;
  for (int d = 0; d < arity; ++d) {
    Word next = at;
    next.push_back(d);
    if (labels.count(next)) kids.push_back(tree_from_labels(labels, next, arity));
  }
  const int label = labels.at(at);
  if (kids.empty()) return Pattern(label);
  if (static_cast<int>(kids.size()) != arity)
    throw std::logic_error("glued support is not a full subtree");
  return Pattern(label, std::move(kids));
}

}  // namespace

GlueResult glue_blocks(const RabinAutomaton& a, const Pattern& p, const Pattern& q) {
  if (!is_block(p) || !is_block(q))
    throw std::invalid_argument("glue_blocks expects uniform-depth blocks");
  if (!is_essential(a)) throw std::invalid_argument("glue_blocks requires an essential automaton");
  if (!is_strongly_connected(a))
    throw std::invalid_argument("glue_blocks requires a strongly connected automaton");
  const auto run_p = find_run(a, p);
  if (!run_p) throw std::invalid_argument("first block is not accepted");
  const auto run_q = find_run(a, q);
  if (!run_q) throw std::invalid_argument("second block is not accepted");

  const int k = a.arity();
  const int n = p.height();
  const int target = run_q->states.at(Word{});

  std::map<Word, int> labels;
  std::map<Word, int> assign;
  for (const auto& [w, s] : run_p->states) assign[w] = s;
  for (const auto& [w, l] : translate(Word{}, p)) labels[w] = l;

  // Boundary words: the leaf-children layer of p, i.e. all words of length n.
  std::vector<Word> boundary;
  for (const auto& [w, s] : run_p->states)
    if (static_cast<int>(w.size()) == n) boundary.push_back(w);

  std::map<int, std::vector<PathStep>> path_by_state;
  std::vector<std::pair<Word, Word>> attachments;
  for (const Word& w : boundary) {
    const int s = assign.at(w);
    auto it = path_by_state.find(s);
    if (it == path_by_state.end()) {
      auto path = bundle_path(a, s, target);
      if (!path) throw std::logic_error("strongly connected automaton lost a bundle path");
      it = path_by_state.emplace(s, std::move(*path)).first;
    }
    const std::vector<PathStep>& path = it->second;

    Word v;
    Word cur = w;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Bundle& t = a.bundles()[static_cast<std::size_t>(path[i].bundle)];
      labels[cur] = t.label;
      assign[cur] = t.source;
      v.push_back(path[i].direction);
      cur.push_back(path[i].direction);
    }
    for (const auto& [u, l] : translate(cur, q)) labels[u] = l;
    // states for the copy's support; the layer below it stays unassigned
    // and gets filled by the completion pass where needed
    for (const auto& [u, s2] : run_q->states)
      if (static_cast<int>(u.size()) < q.height()) assign[concat(cur, u)] = s2;
    attachments.emplace_back(w, v);
  }

  // Completion: give every partially-branched vertex its missing children,
  // assigned along a bundle compatible with the children already present.
  std::vector<Word> partial;
  for (const auto& [w, l] : labels) {
    int present = 0;
    for (int d = 0; d < k; ++d) {
      Word child = w;
      child.push_back(d);
      if (labels.count(child)) ++present;
    }
    if (present > 0 && present < k) partial.push_back(w);
  }
  for (const Word& w : partial) {
    const int s = assign.at(w);
    const Bundle* chosen = nullptr;
    for (const Bundle& t : a.bundles_from(s)) {
      if (t.label != labels.at(w)) continue;
      bool ok = true;
      for (int d = 0; d < k; ++d) {
        Word child = w;
        child.push_back(d);
        auto it = assign.find(child);
        if (labels.count(child) && it != assign.end() && t.children[static_cast<std::size_t>(d)] != it->second) {
          ok = false;
          break;
        }
      }
      if (ok) {
        chosen = &t;
        break;
      }
    }
    if (!chosen) throw std::logic_error("glue lost the bundle certifying a partial vertex");
    for (int d = 0; d < k; ++d) {
      Word child = w;
      child.push_back(d);
      if (labels.count(child)) continue;
      const int cs = chosen->children[static_cast<std::size_t>(d)];
      assign[child] = cs;
      labels[child] = a.bundles_from(cs).front().label;
    }
  }

  GlueResult out{tree_from_labels(labels, Word{}, k), std::move(attachments)};
  return out;
}

}  // namespace treeshift
