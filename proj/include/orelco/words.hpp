#pragma once

// Words in a free group. Generator g (0-based) is the letter g+1, its inverse -(g+1).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orelco {

using Letter = std::int32_t;
using Word = std::vector<Letter>;

constexpr std::uint32_t generator_of(Letter x) noexcept {
  return static_cast<std::uint32_t>((x > 0 ? x : -x) - 1);
}
constexpr Letter letter_of(std::uint32_t generator, bool inverted = false) noexcept {
  const auto x = static_cast<Letter>(generator + 1);
  return inverted ? -x : x;
}

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::uint32_t generator) const { return names_[generator]; }
  /// "a" or "a~"; throws a parse error on unknown symbols.
  Letter letter(std::string_view symbol) const;
  std::string symbol(Letter x) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Whitespace-separated symbols with '~' marking inverses; "1" or blank is the empty word.
Word parse_word(std::string_view text, const Alphabet& alphabet);
/// Empty word prints as "1".
std::string format_word(const Word& u, const Alphabet& alphabet);

Word free_reduce(const Word& u, bool cyclic = false);
Word inverse(const Word& u);
Word concat(const Word& u, const Word& v);
Word power(const Word& u, std::size_t k);
/// Cyclic rotation starting at position k.
Word rotate(const Word& u, std::size_t k);
bool is_cyclically_reduced(const Word& u);
bool is_freely_reduced(const Word& u);

struct PowerDecomposition {
  bool proper = false;
  Word root;
  std::size_t exponent = 1;
};

/// Maximal k with u = root^k. Requires u nonempty.
PowerDecomposition is_proper_power(const Word& u);

}  // namespace orelco
