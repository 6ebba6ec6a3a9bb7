#include "treeshift/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeshift {

FullSubtree::FullSubtree(std::vector<FullSubtree> children) : children_(std::move(children)) {
  if (children_.empty())
    throw std::invalid_argument("internal subtree node needs at least one child");
}

int FullSubtree::height() const {
  int h = 0;
  for (const auto& c : children_) h = std::max(h, c.height());
  return h + 1;
}

std::size_t FullSubtree::size() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.size();
  return n;
}

bool FullSubtree::contains(const Word& w) const {
  const FullSubtree* node = this;
  for (int d : w) {
    if (d < 0 || static_cast<std::size_t>(d) >= node->children_.size()) return false;
    node = &node->children_[static_cast<std::size_t>(d)];
  }
  return true;
}

FullSubtree delta(TreeSignature sig, int n) {
  if (sig.arity < 1) throw std::invalid_argument("arity must be at least 1");
  if (n < 1) throw std::invalid_argument("delta is defined for n >= 1");
  if (n == 1) return FullSubtree{};
  FullSubtree child = delta(sig, n - 1);
  std::vector<FullSubtree> kids(static_cast<std::size_t>(sig.arity), child);
  return FullSubtree(std::move(kids));
}

std::size_t delta_size(TreeSignature sig, int n) {
  if (n < 1) throw std::invalid_argument("delta is defined for n >= 1");
  std::size_t total = 0, level = 1;
  for (int i = 0; i < n; ++i) {
    total += level;
    level *= static_cast<std::size_t>(sig.arity);
  }
  return total;
}

Pattern::Pattern(int label, std::vector<Pattern> children)
    : label_(label), children_(std::move(children)) {
  if (children_.empty())
    throw std::invalid_argument("internal pattern node needs at least one child");
}

int Pattern::height() const {
  int h = 0;
  for (const auto& c : children_) h = std::max(h, c.height());
  return h + 1;
}

std::size_t Pattern::size() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.size();
  return n;
}

FullSubtree Pattern::shape() const {
  if (is_leaf()) return FullSubtree{};
  std::vector<FullSubtree> kids;
  kids.reserve(children_.size());
  for (const auto& c : children_) kids.push_back(c.shape());
  return FullSubtree(std::move(kids));
}

const Pattern& Pattern::subtree(const Word& w) const {
  const Pattern* node = this;
  Word seen;
  for (int d : w) {
    seen.push_back(d);
    if (d < 0 || static_cast<std::size_t>(d) >= node->children_.size())
      throw std::out_of_range("word " + format_word(seen) + " outside pattern support");
    node = &node->children_[static_cast<std::size_t>(d)];
  }
  return *node;
}

bool Pattern::matches_arity(int arity) const {
  if (is_leaf()) return true;
  if (static_cast<int>(children_.size()) != arity) return false;
  return std::all_of(children_.begin(), children_.end(),
                     [arity](const Pattern& c) { return c.matches_arity(arity); });
}

int compare(const Pattern& a, const Pattern& b) {
  if (a.label() != b.label()) return a.label() < b.label() ? -1 : 1;
  const auto& ca = a.children();
  const auto& cb = b.children();
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(ca[i], cb[i]);
    if (c != 0) return c;
  }
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  return 0;
}

bool is_block(const Pattern& p) {
  if (p.is_leaf()) return true;
  const int h = p.children().front().height();
  return std::all_of(p.children().begin(), p.children().end(),
                     [h](const Pattern& c) { return c.height() == h && is_block(c); });
}

Pattern truncate_block(const Pattern& p, int n) {
  if (n < 1) throw std::invalid_argument("block size must be at least 1");
  if (n == 1) return Pattern(p.label());
  if (p.is_leaf()) throw std::invalid_argument("block too shallow to truncate");
  std::vector<Pattern> kids;
  kids.reserve(p.children().size());
  for (const auto& c : p.children()) kids.push_back(truncate_block(c, n - 1));
  return Pattern(p.label(), std::move(kids));
}

namespace {

Pattern zip_support(const Pattern& p, const FullSubtree& m, Word& at) {
  if (m.is_leaf()) return Pattern(p.label());
  if (p.children().size() != m.children().size()) {
    if (p.is_leaf())
      throw std::out_of_range("word " + format_word(at) + " outside pattern support");
    throw std::invalid_argument("arity mismatch between pattern and support at " +
                                format_word(at));
  }
  std::vector<Pattern> kids;
  kids.reserve(m.children().size());
  for (std::size_t i = 0; i < m.children().size(); ++i) {
    at.push_back(static_cast<int>(i));
    kids.push_back(zip_support(p.children()[i], m.children()[i], at));
    at.pop_back();
  }
  return Pattern(p.label(), std::move(kids));
}

}  // namespace

Pattern subpattern(const Pattern& p, const Word& w, const FullSubtree& m) {
  const Pattern& root = p.subtree(w);
  Word at = w;
  return zip_support(root, m, at);
}

namespace {

void collect_translated(const Word& base, const Pattern& p, std::map<Word, int>& out) {
  out[base] = p.label();
  for (std::size_t i = 0; i < p.children().size(); ++i) {
    Word next = base;
    next.push_back(static_cast<int>(i));
    collect_translated(next, p.children()[i], out);
  }
}

}  // namespace

std::map<Word, int> translate(const Word& w, const Pattern& p) {
  std::map<Word, int> out;
  collect_translated(w, p, out);
  return out;
}

std::vector<Pattern> extend_blocks(TreeSignature sig, const Alphabet& alphabet,
                                   const std::vector<Pattern>& blocks, int target) {
  int n = target;
  for (const auto& b : blocks) {
    if (!is_block(b) || !b.matches_arity(sig.arity))
      throw std::invalid_argument("extend_blocks requires uniform-depth blocks");
    n = std::max(n, b.height());
  }
  std::vector<Pattern> out;
  if (blocks.empty()) return out;
  for_each_block(sig, alphabet.size(), n, [&](const Pattern& cand) {
    for (const auto& b : blocks) {
      if (truncate_block(cand, b.height()) == b) {
        out.push_back(cand);
        return;
      }
    }
  });
  return out;
}

namespace {

std::vector<FullSubtree> shapes_up_to(int arity, int max_height) {
  std::vector<FullSubtree> out;
  out.emplace_back();
  if (max_height >= 2) {
    const std::vector<FullSubtree> sub = shapes_up_to(arity, max_height - 1);
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    while (true) {
      std::vector<FullSubtree> kids;
      kids.reserve(static_cast<std::size_t>(arity));
      for (std::size_t pos = 0; pos < idx.size(); ++pos) kids.push_back(sub[idx[pos]]);
      out.emplace_back(std::move(kids));
      int pos = arity - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == sub.size()) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return out;
}

Pattern build_labeled(const FullSubtree& shape, const std::vector<int>& labels,
                      std::size_t& pos) {
  const int label = labels[pos++];
  if (shape.is_leaf()) return Pattern(label);
  std::vector<Pattern> kids;
  kids.reserve(shape.children().size());
  for (const auto& c : shape.children()) kids.push_back(build_labeled(c, labels, pos));
  return Pattern(label, std::move(kids));
}

void emit_labelings(const FullSubtree& shape, int alphabet_size,
                    const std::function<void(const Pattern&)>& fn) {
  const std::size_t n = shape.size();
  std::vector<int> labels(n, 0);
  while (true) {
    std::size_t pos = 0;
    fn(build_labeled(shape, labels, pos));
    std::size_t i = n;
    while (i > 0 && ++labels[i - 1] == alphabet_size) {
      labels[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
}

}  // namespace

void for_each_pattern(TreeSignature sig, int alphabet_size, int max_height,
                      const std::function<void(const Pattern&)>& fn) {
  if (max_height < 1) throw std::invalid_argument("max_height must be at least 1");
  if (alphabet_size < 1) throw std::invalid_argument("alphabet must be nonempty");
  for (const auto& shape : shapes_up_to(sig.arity, max_height))
    emit_labelings(shape, alphabet_size, fn);
}

std::vector<Pattern> all_patterns(TreeSignature sig, int alphabet_size, int max_height) {
  std::vector<Pattern> out;
  for_each_pattern(sig, alphabet_size, max_height,
                   [&](const Pattern& p) { out.push_back(p); });
  return out;
}

void for_each_block(TreeSignature sig, int alphabet_size, int n,
                    const std::function<void(const Pattern&)>& fn) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet must be nonempty");
  emit_labelings(delta(sig, n), alphabet_size, fn);
}

std::vector<Pattern> all_blocks(TreeSignature sig, int alphabet_size, int n) {
  std::vector<Pattern> out;
  for_each_block(sig, alphabet_size, n, [&](const Pattern& p) { out.push_back(p); });
  return out;
}

}  // namespace treeshift
