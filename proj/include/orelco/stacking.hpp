#pragma once

// Stackings of 2-complexes: heights on the boundary circles of the cells,
// lifting the attaching map to an embedding into the 1-skeleton times a line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orelco/complex.hpp"
#include "orelco/covers.hpp"

namespace orelco {

struct Stacking {
  ComplexRef complex;
  std::vector<std::vector<std::optional<Rational>>> heights;  // [cell][position]
};

/// A complex file followed by `h <cell> <position> <rational>` lines.
/// Every boundary position needs exactly one height.
Stacking parse_stacking(std::string_view text);
std::string format_stacking(const Stacking& s);

enum class StackingVerdict { good, not_good, not_embedding };
std::string_view to_string(StackingVerdict v);

struct StackingReport {
  StackingVerdict verdict = StackingVerdict::not_embedding;
  std::string witness;  // offending component or coincident pair
};

/// Embedding first: positions over the same edge need distinct heights. Then every
/// cell must reach the top and the bottom of its edge somewhere.
StackingReport check_good_stacking(const Stacking& s);

/// A good stacking whose every cell carries a cone point of index n >= 2.
bool branched_good_stacking(const StackingReport& r, std::uint32_t branch);

}  // namespace orelco
