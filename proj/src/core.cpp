#include "treeshift/core.hpp"

#include <stdexcept>

namespace treeshift {

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(w[i]);
  }
  return out;
}

namespace {

bool valid_token(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (c == '(' || c == ')' || c == '#' || std::isspace(static_cast<unsigned char>(c)))
      return false;
  }
  return true;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  for (const auto& s : symbols_) {
    if (!valid_token(s))
      throw std::invalid_argument("invalid alphabet token: '" + s + "'");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    for (std::size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i] == symbols_[j])
        throw std::invalid_argument("duplicate alphabet token: '" + symbols_[i] + "'");
}

const std::string& Alphabet::token(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("letter index out of range");
  return symbols_[static_cast<std::size_t>(i)];
}

std::optional<int> Alphabet::index(std::string_view token) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == token) return static_cast<int>(i);
  return std::nullopt;
}

}  // namespace treeshift
