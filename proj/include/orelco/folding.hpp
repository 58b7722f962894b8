#pragma once

// Stallings folding of cellular maps A -> B into A -> C -> B with C -> B an immersion.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "orelco/complex.hpp"

namespace orelco {

struct FoldStep {
  enum class Kind { dart, cell };
  Kind kind = Kind::dart;
  std::uint32_t first = 0;   // source dart or cell id
  std::uint32_t second = 0;

  bool operator==(const FoldStep&) const = default;
};

struct FoldResult {
  CellMorphism original;    // A -> B
  ComplexRef folded;        // C
  CellMorphism projection;  // A -> C, surjective on cells of every dimension
  CellMorphism immersion;   // C -> B
  std::vector<FoldStep> trace;
};

enum class FoldOrder { lowest_first, highest_first };

/// Throws invalid_input "not_morphism" if m is not a morphism.
FoldResult fold(const CellMorphism& m, FoldOrder order = FoldOrder::lowest_first);

/// Rebuilds the folded complex from a recorded trace.
FoldResult replay_fold(const CellMorphism& m, const std::vector<FoldStep>& trace);

std::string format_fold_trace(const std::vector<FoldStep>& trace);
std::vector<FoldStep> parse_fold_trace(std::string_view text);

/// The unique immersion C -> D with through * result = folded.immersion and
/// result * folded.projection = lift_of.
CellMorphism factor_unique(const FoldResult& folded, const CellMorphism& through,
                           const CellMorphism& lift_of);

/// Isomorphism invariant of an immersion over its target: two immersions into
/// the same target have equal forms iff an isomorphism of sources commutes with
/// the maps.
using CanonicalForm = std::vector<std::uint64_t>;
CanonicalForm canonical_form(const CellMorphism& immersion);
bool isomorphic_over_target(const CellMorphism& a, const CellMorphism& b);

}  // namespace orelco
