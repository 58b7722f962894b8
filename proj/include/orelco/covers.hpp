#pragma once

// Finite quotients with exponent-n relator image, Schreier covers and the
// unwrapped cover X0 of a one-relator orbicomplex.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "orelco/complex.hpp"
#include "orelco/orbicomplex.hpp"
#include "orelco/random.hpp"
#include "orelco/words.hpp"

namespace orelco {

using Rational = boost::rational<std::int64_t>;

/// Right action of the free group on {0..degree-1}; generator g sends p to images[g][p].
struct FiniteQuotient {
  std::uint32_t degree = 1;
  std::vector<std::vector<std::uint32_t>> images;

  bool operator==(const FiniteQuotient&) const = default;
};

std::uint32_t act(const FiniteQuotient& q, std::uint32_t point, Letter x);
std::uint32_t act(const FiniteQuotient& q, std::uint32_t point, const Word& u);
/// Permutation p -> p.u.
std::vector<std::uint32_t> word_permutation(const FiniteQuotient& q, const Word& u);
bool is_transitive(const FiniteQuotient& q);
/// Every cycle of the image of w has length exactly n.
bool satisfies_exponent_condition(const FiniteQuotient& q, const Word& w, std::uint32_t n);
/// Throws invalid_input when permutations are malformed.
void validate_quotient(const FiniteQuotient& q, std::size_t generators);

/// Cyclic quotients first, then seeded random permutation representations.
/// Throws budget_exhausted when nothing is found up to max_degree.
FiniteQuotient find_exponent_n_quotient(const OneRelatorOrbicomplex& x, std::uint32_t max_degree,
                                        std::uint64_t seed);

/// Uniformly drawn permutation tuples of the given degree, first qualifying one.
std::optional<FiniteQuotient> random_exponent_n_quotient(const OneRelatorOrbicomplex& x,
                                                        std::uint32_t degree, Rng& rng,
                                                        std::uint32_t tries);

FiniteQuotient parse_quotient(std::string_view text, const Alphabet& alphabet);
std::string format_quotient(const FiniteQuotient& q, const Alphabet& alphabet);

/// Lifts of w^n at the listed points share one boundary cycle.
struct CoverFamily {
  CellId cell = 0;                       // cell of X0
  std::vector<std::uint32_t> points;     // p, p.w, ..., p.w^(n-1)

  bool operator==(const CoverFamily&) const = default;
};

struct UnwrappedCover {
  OrbicomplexRef base;
  FiniteQuotient quotient;
  ComplexRef lifted;  // X'0: the Schreier graph with every lift of w^n attached
  ComplexRef cover;   // X0: one cell per family
  OrbiMorphism covering;
  std::vector<CoverFamily> families;
};

/// Vertex of X0 for a point of the quotient.
inline VertexId point_vertex(std::uint32_t p) { return p; }
/// Edge of X0 leaving point p along generator g.
inline EdgeId generator_edge(const FiniteQuotient& q, std::uint32_t g, std::uint32_t p) {
  return g * q.degree + p;
}

/// Throws invalid_input "exponent_condition" if q does not qualify.
UnwrappedCover build_unwrapped_cover(OrbicomplexRef x, const FiniteQuotient& q);

/// Cover text: X0 in the complex format followed by `family <cell> : <points>` lines.
std::string format_cover(const UnwrappedCover& c);

struct ParsedCover {
  TwoComplex cover;
  std::vector<CoverFamily> families;
};
ParsedCover parse_cover(std::string_view text);

struct CoverReport {
  bool pass = false;
  std::vector<std::string> failures;
  Rational chi{0};
  Rational expected{0};  // sheets * (chi(Gamma) + 1/n)
};

/// Checks that m is a covering away from the cone point with `sheets` sheets.
CoverReport verify_orbi_cover(const OrbiMorphism& m, std::uint32_t sheets);
/// The above for X0 -> X, plus the family structure of X'0.
CoverReport verify_cover(const UnwrappedCover& c);

/// Generators of H intersected with the kernel of the quotient map.
std::vector<Word> pull_back_subgroup(const std::vector<Word>& generators, const FiniteQuotient& q);

/// Lifts a word read from the base vertex to a dart path in X0 (which must be a Schreier cover).
std::vector<DartId> lift_word(const UnwrappedCover& c, const Word& u, std::uint32_t start = 0);

}  // namespace orelco
