#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treeshift {

/// Arity of the underlying regular rooted tree. Every vertex has exactly
/// `arity` children, addressed by directions 0 .. arity-1; vertices are the
/// finite direction words and the empty word is the root.
struct TreeSignature {
  int arity = 1;

  friend bool operator==(const TreeSignature&, const TreeSignature&) = default;
};

/// A vertex of the tree, as the direction word leading to it from the root.
using Word = std::vector<int>;

Word concat(const Word& a, const Word& b);

/// Human-readable form for error messages and reports ("eps", "0.1.1").
std::string format_word(const Word& w);

/// Finite ordered alphabet. Letters are handled as indices everywhere; the
/// tokens only matter for parsing and printing.
///
/// Tokens must be nonempty, distinct, and free of whitespace, parentheses
/// and '#', so that every value containing letters can be printed and
/// re-parsed.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& token(int i) const;
  std::optional<int> index(std::string_view token) const;
  const std::vector<std::string>& tokens() const { return symbols_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

}  // namespace treeshift
