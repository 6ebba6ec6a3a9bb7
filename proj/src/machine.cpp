#include "treeshift/machine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "treeshift/cellular.hpp"

namespace treeshift {

RegularMachine::RegularMachine(TreeSignature sig, Alphabet alphabet,
                               std::vector<std::string> node_names, std::vector<int> colors,
                               std::vector<std::vector<int>> steps, int root)
    : sig_(sig),
      alphabet_(std::move(alphabet)),
      node_names_(std::move(node_names)),
      colors_(std::move(colors)),
      steps_(std::move(steps)),
      root_(root) {
  if (sig_.arity < 1) throw std::invalid_argument("arity must be at least 1");
  const int n = node_count();
  if (n == 0) throw std::invalid_argument("a machine needs at least one node");
  if (static_cast<int>(colors_.size()) != n || static_cast<int>(steps_.size()) != n)
    throw std::invalid_argument("colors and steps must cover every node");
  if (root_ < 0 || root_ >= n) throw std::invalid_argument("root out of range");
  {
    std::set<std::string> seen;
    for (const auto& name : node_names_) {
      if (name.empty()) throw std::invalid_argument("node names must be nonempty");
      if (!seen.insert(name).second)
        throw std::invalid_argument("duplicate node name: '" + name + "'");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (colors_[static_cast<std::size_t>(i)] < 0 ||
        colors_[static_cast<std::size_t>(i)] >= alphabet_.size())
      throw std::invalid_argument("node color outside the alphabet");
    if (static_cast<int>(steps_[static_cast<std::size_t>(i)].size()) != sig_.arity)
      throw std::invalid_argument("every node needs one step per direction");
    for (int c : steps_[static_cast<std::size_t>(i)])
      if (c < 0 || c >= n) throw std::invalid_argument("step target out of range");
  }
  // Prune nodes unreachable from the root, keeping the original order.
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<int> queue{root_};
  seen[static_cast<std::size_t>(root_)] = 1;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int c : steps_[static_cast<std::size_t>(s)]) {
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        queue.push_back(c);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    std::vector<std::string> names;
    std::vector<int> colors;
    std::vector<std::vector<int>> steps;
    for (int i = 0; i < n; ++i) {
      if (!seen[static_cast<std::size_t>(i)]) continue;
      remap[static_cast<std::size_t>(i)] = static_cast<int>(names.size());
      names.push_back(node_names_[static_cast<std::size_t>(i)]);
      colors.push_back(colors_[static_cast<std::size_t>(i)]);
      steps.push_back(steps_[static_cast<std::size_t>(i)]);
    }
    for (auto& row : steps)
      for (int& c : row) c = remap[static_cast<std::size_t>(c)];
    node_names_ = std::move(names);
    colors_ = std::move(colors);
    steps_ = std::move(steps);
    root_ = remap[static_cast<std::size_t>(root_)];
  }
}

const std::string& RegularMachine::node_name(int i) const {
  if (i < 0 || i >= node_count()) throw std::out_of_range("node index out of range");
  return node_names_[static_cast<std::size_t>(i)];
}

int RegularMachine::color(int node) const {
  if (node < 0 || node >= node_count()) throw std::out_of_range("node index out of range");
  return colors_[static_cast<std::size_t>(node)];
}

int RegularMachine::step(int node, int direction) const {
  if (node < 0 || node >= node_count()) throw std::out_of_range("node index out of range");
  if (direction < 0 || direction >= sig_.arity)
    throw std::out_of_range("direction out of range");
  return steps_[static_cast<std::size_t>(node)][static_cast<std::size_t>(direction)];
}

std::vector<int> default_xi(const RabinAutomaton& a) {
  if (!is_essential(a))
    throw std::invalid_argument("a bundle choice needs an essential automaton");
  std::vector<int> xi;
  xi.reserve(static_cast<std::size_t>(a.state_count()));
  for (int s = 0; s < a.state_count(); ++s) {
    const Bundle* first = a.bundles_from(s).data();
    xi.push_back(static_cast<int>(first - a.bundles().data()));
  }
  return xi;
}

namespace {

void check_xi(const RabinAutomaton& a, const std::vector<int>& xi) {
  if (!is_essential(a))
    throw std::invalid_argument("xi machines need an essential automaton");
  if (static_cast<int>(xi.size()) != a.state_count())
    throw std::invalid_argument("xi must choose one bundle per state");
  for (int s = 0; s < a.state_count(); ++s) {
    const int b = xi[static_cast<std::size_t>(s)];
    if (b < 0 || b >= static_cast<int>(a.bundles().size()) ||
        a.bundles()[static_cast<std::size_t>(b)].source != s)
      throw std::invalid_argument("xi must pick a bundle starting at each state");
  }
}

std::vector<std::string> uniquify(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (auto& n : names) {
    while (!seen.insert(n).second) n += "'";
  }
  return names;
}

}  // namespace

RegularMachine xi_machine(const RabinAutomaton& a, int state, const std::vector<int>& xi) {
  check_xi(a, xi);
  if (state < 0 || state >= a.state_count())
    throw std::out_of_range("state index out of range");
  // Orbit nodes are the states reachable from `state` along chosen bundles.
  std::vector<int> order;
  std::map<int, int> node_of;
  std::deque<int> queue{state};
  node_of[state] = 0;
  order.push_back(state);
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    const Bundle& t = a.bundles()[static_cast<std::size_t>(xi[static_cast<std::size_t>(s)])];
    for (int c : t.children) {
      if (!node_of.count(c)) {
        node_of[c] = static_cast<int>(order.size());
        order.push_back(c);
        queue.push_back(c);
      }
    }
  }
  std::vector<std::string> names;
  std::vector<int> colors;
  std::vector<std::vector<int>> steps;
  for (int s : order) {
    const Bundle& t = a.bundles()[static_cast<std::size_t>(xi[static_cast<std::size_t>(s)])];
    names.push_back(a.state_name(s));
    colors.push_back(t.label);
    std::vector<int> row;
    row.reserve(t.children.size());
    for (int c : t.children) row.push_back(node_of.at(c));
    steps.push_back(std::move(row));
  }
  return RegularMachine(a.signature(), a.alphabet(), uniquify(std::move(names)),
                        std::move(colors), std::move(steps), 0);
}

RegularMachine xi_machine(const RabinAutomaton& a, int state) {
  return xi_machine(a, state, default_xi(a));
}

RegularMachine regular_approximation(const RabinAutomaton& a, const Pattern& p,
                                     const RunAssignment& run, const std::vector<int>& xi) {
  check_xi(a, xi);
  if (!is_block(p) || !p.matches_arity(a.arity()))
    throw std::invalid_argument("regular_approximation expects a block");
  const int k = a.arity();
  const int n = p.height();

  // The run must cover the support plus one extra layer and respect bundles.
  for (const auto& [w, s] : run.states)
    if (s < 0 || s >= a.state_count())
      throw std::invalid_argument("run references an unknown state");
  const std::set<Bundle> bundle_set(a.bundles().begin(), a.bundles().end());
  std::function<void(const Pattern&, const Word&)> check = [&](const Pattern& q, const Word& at) {
    const auto it = run.states.find(at);
    if (it == run.states.end())
      throw std::invalid_argument("run does not cover " + format_word(at));
    Bundle want;
    want.source = it->second;
    want.label = q.label();
    for (int d = 0; d < k; ++d) {
      Word child = at;
      child.push_back(d);
      const auto cit = run.states.find(child);
      if (cit == run.states.end())
        throw std::invalid_argument("run does not cover " + format_word(child));
      want.children.push_back(cit->second);
    }
    if (!bundle_set.count(want))
      throw std::invalid_argument("run uses a missing bundle at " + format_word(at));
    for (std::size_t d = 0; d < q.children().size(); ++d) {
      Word child = at;
      child.push_back(static_cast<int>(d));
      check(q.children()[d], child);
    }
  };
  check(p, Word{});

  // Tree nodes for the support, then one xi-machine node per reachable state.
  std::vector<Word> tree_words;
  std::function<void(const Pattern&, const Word&)> collect = [&](const Pattern& q, const Word& at) {
    tree_words.push_back(at);
    for (std::size_t d = 0; d < q.children().size(); ++d) {
      Word child = at;
      child.push_back(static_cast<int>(d));
      collect(q.children()[d], child);
    }
  };
  collect(p, Word{});
  std::sort(tree_words.begin(), tree_words.end());
  std::map<Word, int> tree_node;
  for (std::size_t i = 0; i < tree_words.size(); ++i)
    tree_node[tree_words[i]] = static_cast<int>(i);

  std::vector<int> state_order;
  std::map<int, int> state_node;
  auto intern_state = [&](int s) {
    const auto it = state_node.find(s);
    if (it != state_node.end()) return it->second;
    const int id = static_cast<int>(tree_words.size() + state_order.size());
    state_node[s] = id;
    state_order.push_back(s);
    return id;
  };

  std::vector<std::string> names;
  std::vector<int> colors;
  std::vector<std::vector<int>> steps;
  for (const Word& w : tree_words) {
    names.push_back("@" + (w.empty() ? std::string("eps") : format_word(w)));
    colors.push_back(p.label_at(w));
    std::vector<int> row;
    for (int d = 0; d < k; ++d) {
      Word child = w;
      child.push_back(d);
      if (static_cast<int>(child.size()) < n) {
        row.push_back(tree_node.at(child));
      } else {
        row.push_back(intern_state(run.states.at(child)));
      }
    }
    steps.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < state_order.size(); ++i) {
    const int s = state_order[i];
    const Bundle& t = a.bundles()[static_cast<std::size_t>(xi[static_cast<std::size_t>(s)])];
    names.push_back(a.state_name(s));
    colors.push_back(t.label);
    std::vector<int> row;
    row.reserve(t.children.size());
    for (int c : t.children) row.push_back(intern_state(c));
    steps.push_back(std::move(row));
  }
  return RegularMachine(a.signature(), a.alphabet(), uniquify(std::move(names)),
                        std::move(colors), std::move(steps), tree_node.at(Word{}));
}

RegularMachine regular_approximation(const RabinAutomaton& a, const Pattern& p,
                                     const RunAssignment& run) {
  return regular_approximation(a, p, run, default_xi(a));
}

Pattern unroll_from(const RegularMachine& m, int node, int height) {
  if (height < 1) throw std::invalid_argument("unroll height must be at least 1");
  if (height == 1) return Pattern(m.color(node));
  std::vector<Pattern> kids;
  kids.reserve(static_cast<std::size_t>(m.arity()));
  for (int d = 0; d < m.arity(); ++d)
    kids.push_back(unroll_from(m, m.step(node, d), height - 1));
  return Pattern(m.color(node), std::move(kids));
}

Pattern unroll(const RegularMachine& m, int height) { return unroll_from(m, m.root(), height); }

RegularMachine apply_machine(const CellularAutomaton& tau, const RegularMachine& m) {
  if (tau.domain().arity() != m.arity())
    throw std::invalid_argument("machine arity does not match the rule domain");
  // Certify membership in the domain at the width that pins the shift:
  // every orbit block of that size must be a domain block.
  const int check_width = std::max(tau.radius(), tau.domain().memory());
  const std::vector<Pattern> allowed_vec = blocks(tau.domain(), check_width);
  const std::set<Pattern> allowed(allowed_vec.begin(), allowed_vec.end());
  std::vector<int> colors;
  colors.reserve(static_cast<std::size_t>(m.node_count()));
  for (int i = 0; i < m.node_count(); ++i) {
    const Pattern wide = unroll_from(m, i, check_width);
    if (!allowed.count(wide))
      throw std::invalid_argument("orbit block at node '" + m.node_name(i) +
                                  "' is outside the rule domain");
    colors.push_back(tau.lookup(truncate_block(wide, tau.radius())));
  }
  std::vector<std::string> names;
  std::vector<std::vector<int>> steps;
  names.reserve(static_cast<std::size_t>(m.node_count()));
  steps.reserve(static_cast<std::size_t>(m.node_count()));
  for (int i = 0; i < m.node_count(); ++i) {
    names.push_back(m.node_name(i));
    std::vector<int> row;
    row.reserve(static_cast<std::size_t>(m.arity()));
    for (int d = 0; d < m.arity(); ++d) row.push_back(m.step(i, d));
    steps.push_back(std::move(row));
  }
  return RegularMachine(m.signature(), tau.target_alphabet(), std::move(names),
                        std::move(colors), std::move(steps), m.root());
}

}  // namespace treeshift
