#include "treeshift/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace treeshift {

namespace {

struct Row {
  int line = 0;
  std::vector<std::string> tokens;
};

std::vector<Row> tokenize_lines(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    Row row;
    row.line = number;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) row.tokens.push_back(tok);
    if (!row.tokens.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

/// Pattern tokens: '(' letter children ')'. Parens need not be separated
/// from letters by spaces.
std::vector<std::string> pattern_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '(' || c == ')') {
      flush();
      out.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

Pattern parse_pattern_tokens(const std::vector<std::string>& toks, std::size_t& pos,
                             const Alphabet& alphabet, const std::string& file, int line) {
  if (pos >= toks.size() || toks[pos] != "(")
    throw ParseError(file, line, "expected '(' in pattern");
  ++pos;
  if (pos >= toks.size() || toks[pos] == "(" || toks[pos] == ")")
    throw ParseError(file, line, "expected letter in pattern");
  const auto letter = alphabet.index(toks[pos]);
  if (!letter) throw ParseError(file, line, "unknown letter '" + toks[pos] + "'");
  ++pos;
  std::vector<Pattern> kids;
  while (pos < toks.size() && toks[pos] == "(")
    kids.push_back(parse_pattern_tokens(toks, pos, alphabet, file, line));
  if (pos >= toks.size() || toks[pos] != ")")
    throw ParseError(file, line, "expected ')' in pattern");
  ++pos;
  if (kids.empty()) return Pattern(*letter);
  return Pattern(*letter, std::move(kids));
}

}  // namespace

Pattern parse_pattern(const std::string& text, const Alphabet& alphabet,
                      const std::string& file) {
  std::string stripped;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      stripped += line;
      stripped += '\n';
    }
  }
  const std::vector<std::string> toks = pattern_tokens(stripped);
  std::size_t pos = 0;
  Pattern p = parse_pattern_tokens(toks, pos, alphabet, file, 1);
  if (pos != toks.size()) throw ParseError(file, 1, "trailing tokens after pattern");
  return p;
}

std::string print_pattern(const Pattern& p, const Alphabet& alphabet) {
  std::string out = "(" + alphabet.token(p.label());
  for (const auto& c : p.children()) out += " " + print_pattern(c, alphabet);
  out += ")";
  return out;
}

namespace {

struct HeaderData {
  int arity = 0;
  std::vector<std::string> alphabet;
  bool have_arity = false;
  bool have_alphabet = false;
};

int parse_positive_int(const Row& row, std::size_t pos, const std::string& file,
                       const std::string& what) {
  if (pos >= row.tokens.size())
    throw ParseError(file, row.line, "missing " + what);
  try {
    std::size_t used = 0;
    const int value = std::stoi(row.tokens[pos], &used);
    if (used != row.tokens[pos].size() || value < 1) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw ParseError(file, row.line, "invalid " + what + " '" + row.tokens[pos] + "'");
  }
}

}  // namespace

RabinAutomaton parse_automaton(const std::string& text, const std::string& file) {
  const auto rows = tokenize_lines(text);
  std::optional<int> arity;
  std::optional<Alphabet> alphabet;
  std::optional<std::vector<std::string>> states;
  std::vector<Bundle> bundles;
  std::set<std::vector<std::string>> bundle_lines;
  std::map<std::string, int> state_index;

  for (const Row& row : rows) {
    const std::string& key = row.tokens[0];
    if (key == "arity") {
      if (arity) throw ParseError(file, row.line, "duplicate arity line");
      arity = parse_positive_int(row, 1, file, "arity");
      if (row.tokens.size() != 2) throw ParseError(file, row.line, "trailing tokens after arity");
    } else if (key == "alphabet") {
      if (alphabet) throw ParseError(file, row.line, "duplicate alphabet line");
      std::vector<std::string> toks(row.tokens.begin() + 1, row.tokens.end());
      if (toks.empty()) throw ParseError(file, row.line, "alphabet must list at least one token");
      try {
        alphabet.emplace(std::move(toks));
      } catch (const std::exception& e) {
        throw ParseError(file, row.line, e.what());
      }
    } else if (key == "states") {
      if (states) throw ParseError(file, row.line, "duplicate states line");
      states.emplace(row.tokens.begin() + 1, row.tokens.end());
      for (std::size_t i = 0; i < states->size(); ++i) {
        if (state_index.count((*states)[i]))
          throw ParseError(file, row.line, "duplicate state name '" + (*states)[i] + "'");
        state_index[(*states)[i]] = static_cast<int>(i);
      }
    } else if (key == "bundle") {
      if (!arity || !alphabet || !states)
        throw ParseError(file, row.line, "bundle line before arity/alphabet/states");
      if (static_cast<int>(row.tokens.size()) != 3 + *arity)
        throw ParseError(file, row.line, "bundle needs source, letter and one child per direction");
      std::vector<std::string> lineKey(row.tokens.begin(), row.tokens.end());
      if (!bundle_lines.insert(lineKey).second)
        throw ParseError(file, row.line, "duplicate bundle line");
      Bundle t;
      const auto src = state_index.find(row.tokens[1]);
      if (src == state_index.end())
        throw ParseError(file, row.line, "unknown state '" + row.tokens[1] + "'");
      t.source = src->second;
      const auto letter = alphabet->index(row.tokens[2]);
      if (!letter) throw ParseError(file, row.line, "unknown letter '" + row.tokens[2] + "'");
      t.label = *letter;
      for (std::size_t d = 0; d < static_cast<std::size_t>(*arity); ++d) {
        const std::string& tok = row.tokens[3 + d];
        const auto child = state_index.find(tok);
        if (child == state_index.end())
          throw ParseError(file, row.line, "unknown state '" + tok + "'");
        t.children.push_back(child->second);
      }
      bundles.push_back(std::move(t));
    } else {
      throw ParseError(file, row.line, "unknown keyword '" + key + "'");
    }
  }
  if (!arity) throw ParseError(file, 1, "missing arity line");
  if (!alphabet) throw ParseError(file, 1, "missing alphabet line");
  if (!states) throw ParseError(file, 1, "missing states line");
  return RabinAutomaton(TreeSignature{*arity}, std::move(*alphabet), std::move(*states),
                        std::move(bundles));
}

namespace {

std::string header_text(const TreeSignature& sig, const Alphabet& alphabet) {
  std::string out = "arity " + std::to_string(sig.arity) + "\n";
  out += "alphabet";
  for (const auto& t : alphabet.tokens()) out += " " + t;
  out += "\n";
  return out;
}

std::string bundle_lines_text(const RabinAutomaton& a) {
  std::string out;
  for (const Bundle& t : a.bundles()) {
    out += "bundle " + a.state_name(t.source) + " " + a.alphabet().token(t.label);
    for (int c : t.children) out += " " + a.state_name(c);
    out += "\n";
  }
  return out;
}

}  // namespace

std::string print_automaton(const RabinAutomaton& a) {
  std::string out = header_text(a.signature(), a.alphabet());
  out += "states";
  for (const auto& n : a.state_names()) out += " " + n;
  out += "\n";
  out += bundle_lines_text(a);
  return out;
}

SftSpec parse_sft(const std::string& text, const std::string& file) {
  const auto rows = tokenize_lines(text);
  std::optional<int> arity;
  std::optional<Alphabet> alphabet;
  std::optional<int> memory;
  std::vector<Pattern> forbidden;

  for (const Row& row : rows) {
    const std::string& key = row.tokens[0];
    if (key == "arity") {
      if (arity) throw ParseError(file, row.line, "duplicate arity line");
      arity = parse_positive_int(row, 1, file, "arity");
    } else if (key == "alphabet") {
      if (alphabet) throw ParseError(file, row.line, "duplicate alphabet line");
      std::vector<std::string> toks(row.tokens.begin() + 1, row.tokens.end());
      if (toks.empty()) throw ParseError(file, row.line, "alphabet must list at least one token");
      try {
        alphabet.emplace(std::move(toks));
      } catch (const std::exception& e) {
        throw ParseError(file, row.line, e.what());
      }
    } else if (key == "memory") {
      if (memory) throw ParseError(file, row.line, "duplicate memory line");
      memory = parse_positive_int(row, 1, file, "memory");
    } else if (key == "forbid") {
      if (!arity || !alphabet || !memory)
        throw ParseError(file, row.line, "forbid line before arity/alphabet/memory");
      std::string rest;
      for (std::size_t i = 1; i < row.tokens.size(); ++i) rest += row.tokens[i] + " ";
      Pattern p = [&] {
        try {
          return parse_pattern(rest, *alphabet, file);
        } catch (const ParseError&) {
          throw ParseError(file, row.line, "invalid forbidden pattern");
        }
      }();
      if (!is_block(p) || !p.matches_arity(*arity))
        throw ParseError(file, row.line, "forbidden pattern must be a block on some delta(n)");
      if (p.height() > *memory)
        throw ParseError(file, row.line, "forbidden block deeper than the declared memory");
      forbidden.push_back(std::move(p));
    } else {
      throw ParseError(file, row.line, "unknown keyword '" + key + "'");
    }
  }
  if (!arity) throw ParseError(file, 1, "missing arity line");
  if (!alphabet) throw ParseError(file, 1, "missing alphabet line");
  if (!memory) throw ParseError(file, 1, "missing memory line");
  try {
    return normalize(TreeSignature{*arity}, *alphabet, forbidden, *memory);
  } catch (const std::exception& e) {
    throw ParseError(file, 1, e.what());
  }
}

std::string print_sft(const SftSpec& x) {
  std::string out = header_text(x.signature(), x.alphabet());
  out += "memory " + std::to_string(x.memory()) + "\n";
  for (const auto& b : x.forbidden()) out += "forbid " + print_pattern(b, x.alphabet()) + "\n";
  return out;
}

CellularAutomaton parse_ca(const std::string& text, const std::string& file) {
  const auto rows = tokenize_lines(text);
  std::optional<int> arity;
  std::optional<Alphabet> in_alphabet;
  std::optional<Alphabet> out_alphabet;
  std::optional<int> memory;
  std::map<Pattern, int> table;
  std::map<Pattern, int> rule_lines;

  for (const Row& row : rows) {
    const std::string& key = row.tokens[0];
    if (key == "arity") {
      if (arity) throw ParseError(file, row.line, "duplicate arity line");
      arity = parse_positive_int(row, 1, file, "arity");
    } else if (key == "in_alphabet" || key == "out_alphabet") {
      auto& slot = key == "in_alphabet" ? in_alphabet : out_alphabet;
      if (slot) throw ParseError(file, row.line, "duplicate " + key + " line");
      std::vector<std::string> toks(row.tokens.begin() + 1, row.tokens.end());
      if (toks.empty()) throw ParseError(file, row.line, key + " must list at least one token");
      try {
        slot.emplace(std::move(toks));
      } catch (const std::exception& e) {
        throw ParseError(file, row.line, e.what());
      }
    } else if (key == "memory") {
      if (memory) throw ParseError(file, row.line, "duplicate memory line");
      memory = parse_positive_int(row, 1, file, "memory");
    } else if (key == "rule") {
      if (!arity || !in_alphabet || !out_alphabet || !memory)
        throw ParseError(file, row.line, "rule line before the headers");
      if (row.tokens.size() < 3) throw ParseError(file, row.line, "rule needs a block and a letter");
      std::string rest;
      for (std::size_t i = 1; i + 1 < row.tokens.size(); ++i) rest += row.tokens[i] + " ";
      Pattern block = [&] {
        try {
          return parse_pattern(rest, *in_alphabet, file);
        } catch (const ParseError&) {
          throw ParseError(file, row.line, "invalid rule block");
        }
      }();
      if (!is_block(block) || !block.matches_arity(*arity) || block.height() != *memory)
        throw ParseError(file, row.line, "rule block must live on delta(memory)");
      const auto out = out_alphabet->index(row.tokens.back());
      if (!out)
        throw ParseError(file, row.line, "unknown letter '" + row.tokens.back() + "'");
      if (rule_lines.count(block))
        throw ParseError(file, row.line, "duplicate rule for a block");
      rule_lines.emplace(block, row.line);
      table.emplace(std::move(block), *out);
    } else {
      throw ParseError(file, row.line, "unknown keyword '" + key + "'");
    }
  }
  if (!arity) throw ParseError(file, 1, "missing arity line");
  if (!in_alphabet) throw ParseError(file, 1, "missing in_alphabet line");
  if (!out_alphabet) throw ParseError(file, 1, "missing out_alphabet line");
  if (!memory) throw ParseError(file, 1, "missing memory line");

  const TreeSignature sig{*arity};
  std::vector<Pattern> forbidden;
  for_each_block(sig, in_alphabet->size(), *memory, [&](const Pattern& b) {
    if (!table.count(b)) forbidden.push_back(b);
  });
  SftSpec domain(sig, *in_alphabet, *memory, std::move(forbidden));
  try {
    return CellularAutomaton(std::move(domain), std::move(*out_alphabet), *memory,
                             std::move(table));
  } catch (const std::exception& e) {
    // Some rule block is not extendable within the implied domain shift.
    throw ParseError(file, 1, e.what());
  }
}

std::string print_ca(const CellularAutomaton& tau) {
  std::string out = "arity " + std::to_string(tau.domain().arity()) + "\n";
  out += "in_alphabet";
  for (const auto& t : tau.domain().alphabet().tokens()) out += " " + t;
  out += "\nout_alphabet";
  for (const auto& t : tau.target_alphabet().tokens()) out += " " + t;
  out += "\nmemory " + std::to_string(tau.radius()) + "\n";
  for (const auto& [block, letter] : tau.table()) {
    out += "rule " + print_pattern(block, tau.domain().alphabet()) + " " +
           tau.target_alphabet().token(letter) + "\n";
  }
  return out;
}

FiniteTreeAutomaton parse_fta(const std::string& text, const std::string& file) {
  // Split off the initial/final lines, parse the rest as an automaton.
  std::string automaton_text;
  std::optional<std::vector<std::string>> initial_names;
  std::optional<std::string> final_name;
  int final_line = 0, initial_line = 0;
  {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      std::string body = line;
      const auto hash = body.find('#');
      if (hash != std::string::npos) body.resize(hash);
      std::istringstream ls(body);
      std::string first;
      if (!(ls >> first)) {
        automaton_text += line + "\n";
        continue;
      }
      if (first == "initial") {
        if (initial_names) throw ParseError(file, number, "duplicate initial line");
        std::vector<std::string> names;
        std::string tok;
        while (ls >> tok) names.push_back(tok);
        initial_names = std::move(names);
        initial_line = number;
        automaton_text += "\n";  // keep line numbers aligned
      } else if (first == "final") {
        if (final_name) throw ParseError(file, number, "duplicate final line");
        std::string tok;
        if (!(ls >> tok)) throw ParseError(file, number, "final needs a state name");
        std::string extra;
        if (ls >> extra) throw ParseError(file, number, "trailing tokens after final");
        final_name = tok;
        final_line = number;
        automaton_text += "\n";
      } else {
        automaton_text += line + "\n";
      }
    }
  }
  RabinAutomaton base = parse_automaton(automaton_text, file);
  if (!initial_names) throw ParseError(file, 1, "missing initial line");
  if (!final_name) throw ParseError(file, 1, "missing final line");
  std::vector<int> initial;
  for (const auto& n : *initial_names) {
    const auto s = base.state_index(n);
    if (!s) throw ParseError(file, initial_line, "unknown state '" + n + "'");
    initial.push_back(*s);
  }
  const auto f = base.state_index(*final_name);
  if (!f) throw ParseError(file, final_line, "unknown state '" + *final_name + "'");
  return FiniteTreeAutomaton(std::move(base), std::move(initial), *f);
}

std::string print_fta(const FiniteTreeAutomaton& b) {
  std::string out = print_automaton(b.base());
  out += "initial";
  for (int s : b.initial()) out += " " + b.base().state_name(s);
  out += "\n";
  out += "final " + b.base().state_name(b.final_state()) + "\n";
  return out;
}

RegularMachine parse_machine(const std::string& text, const std::string& file) {
  const auto rows = tokenize_lines(text);
  std::optional<int> arity;
  std::optional<Alphabet> alphabet;
  std::optional<std::string> root_name;
  struct NodeRow {
    int line;
    std::string name;
    std::string letter;
    std::vector<std::string> children;
  };
  std::vector<NodeRow> nodes;

  for (const Row& row : rows) {
    const std::string& key = row.tokens[0];
    if (key == "arity") {
      if (arity) throw ParseError(file, row.line, "duplicate arity line");
      arity = parse_positive_int(row, 1, file, "arity");
    } else if (key == "alphabet") {
      if (alphabet) throw ParseError(file, row.line, "duplicate alphabet line");
      std::vector<std::string> toks(row.tokens.begin() + 1, row.tokens.end());
      if (toks.empty()) throw ParseError(file, row.line, "alphabet must list at least one token");
      try {
        alphabet.emplace(std::move(toks));
      } catch (const std::exception& e) {
        throw ParseError(file, row.line, e.what());
      }
    } else if (key == "root") {
      if (root_name) throw ParseError(file, row.line, "duplicate root line");
      if (row.tokens.size() != 2) throw ParseError(file, row.line, "root needs one node name");
      root_name = row.tokens[1];
    } else if (key == "node") {
      if (!arity || !alphabet)
        throw ParseError(file, row.line, "node line before arity/alphabet");
      if (static_cast<int>(row.tokens.size()) != 3 + *arity)
        throw ParseError(file, row.line, "node needs a name, a letter and one child per direction");
      NodeRow n;
      n.line = row.line;
      n.name = row.tokens[1];
      n.letter = row.tokens[2];
      n.children.assign(row.tokens.begin() + 3, row.tokens.end());
      nodes.push_back(std::move(n));
    } else {
      throw ParseError(file, row.line, "unknown keyword '" + key + "'");
    }
  }
  if (!arity) throw ParseError(file, 1, "missing arity line");
  if (!alphabet) throw ParseError(file, 1, "missing alphabet line");
  if (!root_name) throw ParseError(file, 1, "missing root line");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (index.count(nodes[i].name))
      throw ParseError(file, nodes[i].line, "duplicate node '" + nodes[i].name + "'");
    index[nodes[i].name] = static_cast<int>(i);
  }
  std::vector<std::string> names;
  std::vector<int> colors;
  std::vector<std::vector<int>> steps;
  for (const auto& n : nodes) {
    names.push_back(n.name);
    const auto letter = alphabet->index(n.letter);
    if (!letter) throw ParseError(file, n.line, "unknown letter '" + n.letter + "'");
    colors.push_back(*letter);
    std::vector<int> row;
    for (const auto& c : n.children) {
      const auto it = index.find(c);
      if (it == index.end()) throw ParseError(file, n.line, "unknown node '" + c + "'");
      row.push_back(it->second);
    }
    steps.push_back(std::move(row));
  }
  const auto root = index.find(*root_name);
  if (root == index.end()) throw ParseError(file, 1, "unknown root node '" + *root_name + "'");
  try {
    return RegularMachine(TreeSignature{*arity}, std::move(*alphabet), std::move(names),
                          std::move(colors), std::move(steps), root->second);
  } catch (const std::exception& e) {
    throw ParseError(file, 1, e.what());
  }
}

std::string print_machine(const RegularMachine& m) {
  std::string out = header_text(m.signature(), m.alphabet());
  out += "root " + m.node_name(m.root()) + "\n";
  for (int i = 0; i < m.node_count(); ++i) {
    out += "node " + m.node_name(i) + " " + m.alphabet().token(m.color(i));
    for (int d = 0; d < m.arity(); ++d) out += " " + m.node_name(m.step(i, d));
    out += "\n";
  }
  return out;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

std::string graph_body(const RabinAutomaton& a, const std::vector<int>* initial,
                       const int* final_state) {
  std::string out = "digraph automaton {\n";
  if (a.state_count() > 0 || !a.bundles().empty()) out += "  rankdir=LR;\n";
  std::vector<char> is_initial(static_cast<std::size_t>(a.state_count()), 0);
  if (initial)
    for (int s : *initial) is_initial[static_cast<std::size_t>(s)] = 1;
  for (int s = 0; s < a.state_count(); ++s) {
    std::string attrs = "label=" + quote(a.state_name(s));
    attrs += final_state && *final_state == s ? ", shape=doublecircle" : ", shape=circle";
    if (initial && is_initial[static_cast<std::size_t>(s)]) attrs += ", style=bold";
    out += "  s" + std::to_string(s) + " [" + attrs + "];\n";
  }
  for (std::size_t i = 0; i < a.bundles().size(); ++i) {
    out += "  b" + std::to_string(i) + " [shape=point];\n";
  }
  for (std::size_t i = 0; i < a.bundles().size(); ++i) {
    const Bundle& t = a.bundles()[i];
    out += "  s" + std::to_string(t.source) + " -> b" + std::to_string(i) + " [label=" +
           quote(a.alphabet().token(t.label)) + ", arrowhead=none];\n";
    for (std::size_t d = 0; d < t.children.size(); ++d) {
      out += "  b" + std::to_string(i) + " -> s" + std::to_string(t.children[d]) +
             " [label=\"" + std::to_string(d) + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace

std::string graph_description(const RabinAutomaton& a) {
  return graph_body(a, nullptr, nullptr);
}

std::string graph_description(const FiniteTreeAutomaton& b) {
  const int f = b.final_state();
  return graph_body(b.base(), &b.initial(), &f);
}

FileKind detect_kind(const std::string& text) {
  const auto rows = tokenize_lines(text);
  bool has_rule = false, has_in_alphabet = false, has_forbid = false, has_memory = false;
  bool has_initial = false, has_final = false, has_node = false, has_root = false;
  bool has_states = false;
  for (const Row& row : rows) {
    const std::string& key = row.tokens[0];
    has_rule |= key == "rule";
    has_in_alphabet |= key == "in_alphabet";
    has_forbid |= key == "forbid";
    has_memory |= key == "memory";
    has_initial |= key == "initial";
    has_final |= key == "final";
    has_node |= key == "node";
    has_root |= key == "root";
    has_states |= key == "states";
    if (key.front() == '(') return FileKind::Pattern;
  }
  if (has_rule || has_in_alphabet) return FileKind::CellularAutomaton;
  if (has_forbid || (has_memory && !has_states)) return FileKind::Sft;
  if (has_initial || has_final) return FileKind::FiniteTreeAutomaton;
  if (has_node || has_root) return FileKind::Machine;
  return FileKind::Automaton;
}

}  // namespace treeshift
