#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellang/errors.hpp"

namespace cellang {

using Letter = std::uint32_t;  // index into an Alphabet
using Word = std::string;      // letters spelled as their characters

/// Ordered set of single-character letters. The order is used for every
/// tie-break in the library (canonical numbering, shortlex witnesses).
class Alphabet {
 public:
  /// Each non-whitespace character of `letters` becomes one letter, in order.
  explicit Alphabet(std::string_view letters) {
    for (char c : letters) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      add(c);
    }
    if (letters_.empty()) throw InvalidAlphabet("alphabet must not be empty");
  }

  std::size_t size() const noexcept { return letters_.size(); }
  char symbol(Letter l) const { return letters_.at(l); }
  const std::string& symbols() const noexcept { return letters_; }

  std::optional<Letter> find(char c) const noexcept {
    auto idx = index_[static_cast<unsigned char>(c)];
    if (idx < 0) return std::nullopt;
    return static_cast<Letter>(idx);
  }

  bool contains(char c) const noexcept { return find(c).has_value(); }

  Letter index(char c) const {
    if (auto l = find(c)) return *l;
    throw UnknownLetter(c);
  }

  std::vector<Letter> encode(std::string_view w) const {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (char c : w) out.push_back(index(c));
    return out;
  }

  /// Copy with one more letter appended at the end of the order.
  Alphabet extended(char c) const {
    Alphabet copy = *this;
    copy.add(c);
    return copy;
  }

  bool operator==(const Alphabet& other) const noexcept { return letters_ == other.letters_; }

 private:
  void add(char c) {
    // '_' is the empty-word literal, '#' starts comments, the rest are regex syntax.
    static constexpr std::string_view reserved = "#_()|*";
    if (reserved.find(c) != std::string_view::npos ||
        std::isspace(static_cast<unsigned char>(c)) || !std::isprint(static_cast<unsigned char>(c)))
      throw InvalidAlphabet(std::string("letter not allowed in an alphabet: '") + c + "'");
    auto& slot = index_[static_cast<unsigned char>(c)];
    if (slot >= 0) throw InvalidAlphabet(std::string("duplicate letter '") + c + "'");
    slot = static_cast<int>(letters_.size());
    letters_.push_back(c);
  }

  std::string letters_;
  std::array<int, 256> index_ = make_empty_index();

  static constexpr std::array<int, 256> make_empty_index() {
    std::array<int, 256> a{};
    for (auto& v : a) v = -1;
    return a;
  }
};

}  // namespace cellang
