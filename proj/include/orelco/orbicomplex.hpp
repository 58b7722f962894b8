#pragma once

// One-relator orbicomplexes X = Gamma + D_n attached along w, and maps into them.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "orelco/complex.hpp"
#include "orelco/words.hpp"

namespace orelco {

struct OneRelatorOrbicomplex {
  Graph gamma;
  std::vector<DartId> relator;  // w as a closed dart path in gamma
  std::uint32_t branch = 1;     // n

  std::uint32_t relator_length() const noexcept {
    return static_cast<std::uint32_t>(relator.size());
  }
  /// |w^n|, the boundary length of every cell mapping onto the orbifold disc.
  std::uint32_t cell_length() const noexcept { return branch * relator_length(); }
  std::vector<DartId> relator_power() const;

  bool operator==(const OneRelatorOrbicomplex&) const = default;
};

using OrbicomplexRef = std::shared_ptr<const OneRelatorOrbicomplex>;

/// Validates and packages. Throws invalid_input with reason proper_power,
/// non_closed_relator, backtracking_relator, empty_relator or bad_branch.
OneRelatorOrbicomplex build_orbicomplex(Graph gamma, std::vector<DartId> w, std::uint32_t n);

/// Single vertex "o" with one loop per generator; edge names are the generator names.
Graph rose(const std::vector<std::string>& generators);
bool is_rose(const Graph& g);
/// Generator symbols of a rose: its edge names.
Alphabet rose_alphabet(const Graph& g);
/// Rose dart path <-> word: forward dart of edge g is the letter g+1.
Word darts_to_word(const std::vector<DartId>& path);
std::vector<DartId> word_to_darts(const Word& u);
DartId letter_dart(Letter x);
Letter dart_letter(DartId d);

OneRelatorOrbicomplex rose_orbicomplex(const std::vector<std::string>& generators,
                                       const Word& w, std::uint32_t n);
/// Relator w as a word; requires a rose.
Word relator_word(const OneRelatorOrbicomplex& x);

/// Gamma with one ordinary 2-cell attached along w^n.
TwoComplex presentation_complex(const OneRelatorOrbicomplex& x);
/// Gamma with one ordinary 2-cell attached along w.
TwoComplex relator_complex(const OneRelatorOrbicomplex& x);

/// Orbicomplex text format: a cell-free complex plus `relator <path>` and `branch <n>`.
OneRelatorOrbicomplex parse_orbicomplex(std::string_view text);
std::string format_orbicomplex(const OneRelatorOrbicomplex& x);

struct OrbiMorphism {
  ComplexRef source;
  OrbicomplexRef target;
  std::vector<VertexId> vertex_map;
  std::vector<DartId> edge_map;          // image in gamma of each source forward dart
  std::vector<Alignment> cell_alignment;  // onto w^n, positions mod n|w|

  DartId image(DartId d) const {
    const DartId f = edge_map[edge_of(d)];
    return is_forward(d) ? f : reverse(f);
  }
};

struct OrbiCheck {
  MapClass kind = MapClass::not_morphism;  // never covering; see `covering`
  bool covering = false;                   // immersion with bijective links and sides
  std::string witness;
};

OrbiCheck check_orbi_immersion(const OrbiMorphism& m);

/// Side of D_n met by position p of source cell c: aligned position mod |w|.
std::uint32_t disc_side(const OrbiMorphism& m, CellId c, std::uint32_t p);

/// n times the number of source cells. Requires an immersion.
std::int64_t degree(const OrbiMorphism& m);
/// Minimum over target cells of the number of source cells on it. Requires an immersion.
std::int64_t degree(const CellMorphism& m);

/// Same map with every cell alignment recomputed from the boundary data.
OrbiMorphism realign(const OrbiMorphism& m);

/// Reads edge labels (generator names) of a source over a rose orbicomplex and
/// finds the alignment of every cell. Throws invalid_input "not_morphism".
OrbiMorphism derive_orbi_morphism(ComplexRef source, OrbicomplexRef target);

/// The natural map of the presentation complex onto X.
OrbiMorphism presentation_map(ComplexRef presentation, OrbicomplexRef target);

enum class AuditMode {
  strict,     // source must be an irreducible, connected, non-contractible immersion
  permissive  // immersion only; reducible sources are audited as given
};

struct WcyclesReport {
  std::int64_t chi1 = 0;
  std::int64_t deg = 0;
  std::int64_t slack1 = 0;  // chi1 + deg, at most 0
  std::int64_t chi2 = 0;
  std::int64_t cells = 0;
  std::int64_t slack2 = 0;  // chi2 + (n-1) cells, at most 0
  bool pass = false;
  bool irreducible = false;
  std::int64_t rank_witness = 0;  // non-tree edges of the 1-skeleton
  bool rank_bound_holds = false;  // cells (n-1) <= rank_witness - 1
};

WcyclesReport wcycles_audit(const OrbiMorphism& m, AuditMode mode = AuditMode::strict);

std::string wcycles_csv_header();
std::string wcycles_csv_row(const std::string& id, const WcyclesReport& r);

}  // namespace orelco
