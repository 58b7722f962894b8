#include "orelco/words.hpp"

#include <algorithm>

#include "orelco/error.hpp"
#include "orelco/text.hpp"

namespace orelco {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const std::string& s = names_[i];
    if (s.empty() || s.back() == '~' || s == "1")
      throw Error(ErrorKind::invalid_input, "bad_generator", "'" + s + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == s) throw Error(ErrorKind::invalid_input, "duplicate_generator", s);
  }
}

Letter Alphabet::letter(std::string_view symbol) const {
  const bool inverted = !symbol.empty() && symbol.back() == '~';
  const std::string_view base = inverted ? symbol.substr(0, symbol.size() - 1) : symbol;
  for (std::uint32_t g = 0; g < names_.size(); ++g)
    if (names_[g] == base) return letter_of(g, inverted);
  throw Error(ErrorKind::parse, "unknown_generator", "'" + std::string(symbol) + "'");
}

std::string Alphabet::symbol(Letter x) const {
  const std::string& base = names_.at(generator_of(x));
  return x > 0 ? base : base + "~";
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  const auto tokens = split_ws(text);
  if (tokens.size() == 1 && tokens[0] == "1") return {};
  Word u;
  for (const auto& t : tokens) u.push_back(alphabet.letter(t));
  return u;
}

std::string format_word(const Word& u, const Alphabet& alphabet) {
  if (u.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.symbol(u[i]);
  }
  return out;
}

Word free_reduce(const Word& u, bool cyclic) {
  Word out;
  out.reserve(u.size());
  for (Letter x : u) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  if (!cyclic) return out;
  std::size_t lo = 0;
  std::size_t hi = out.size();
  while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(out.begin() + static_cast<std::ptrdiff_t>(lo),
              out.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& u) {
  Word out(u.rbegin(), u.rend());
  for (Letter& x : out) x = -x;
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word power(const Word& u, std::size_t k) {
  Word out;
  out.reserve(u.size() * k);
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), u.begin(), u.end());
  return out;
}

Word rotate(const Word& u, std::size_t k) {
  if (u.empty()) return u;
  Word out = u;
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % u.size()), out.end());
  return out;
}

bool is_freely_reduced(const Word& u) {
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    if (u[i] == -u[i + 1]) return false;
  return true;
}

bool is_cyclically_reduced(const Word& u) {
  return is_freely_reduced(u) && (u.size() < 2 || u.front() != -u.back());
}

PowerDecomposition is_proper_power(const Word& u) {
  if (u.empty()) throw Error(ErrorKind::precondition, "empty_word", "power test needs a nonempty word");
  const std::size_t length = u.size();
  for (std::size_t period = 1; period <= length; ++period) {
    if (length % period != 0) continue;
    bool periodic = true;
    for (std::size_t i = period; i < length && periodic; ++i) periodic = u[i] == u[i - period];
    if (periodic) {
      PowerDecomposition out;
      out.exponent = length / period;
      out.proper = out.exponent >= 2;
      out.root.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(period));
      return out;
    }
  }
  return {};
}

}  // namespace orelco
