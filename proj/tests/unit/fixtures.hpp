#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orelco/complex_io.hpp"
#include "orelco/covers.hpp"
#include "orelco/orbicomplex.hpp"
#include "orelco/words.hpp"

namespace fixture {

using namespace orelco;

inline const Alphabet& ab() {
  static const Alphabet a({"a", "b"});
  return a;
}

inline Word word(const std::string& text) { return parse_word(text, ab()); }

inline OrbicomplexRef orbi(const std::string& w, std::uint32_t n) {
  return std::make_shared<const OneRelatorOrbicomplex>(rose_orbicomplex({"a", "b"}, word(w), n));
}

inline FiniteQuotient cyclic(std::uint32_t m, std::vector<std::uint32_t> shifts) {
  FiniteQuotient q;
  q.degree = m;
  for (std::uint32_t s : shifts) {
    std::vector<std::uint32_t> perm(m);
    for (std::uint32_t p = 0; p < m; ++p) perm[p] = (p + s) % m;
    q.images.push_back(perm);
  }
  return q;
}

/// X0 for w = ab, n = 2 over Z/2 with a -> 1, b -> 0.
inline UnwrappedCover worked_cover() { return build_unwrapped_cover(orbi("a b", 2), cyclic(2, {1, 0})); }

}  // namespace fixture
