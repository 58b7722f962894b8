#pragma once

// Dehn's algorithm for F / <<w^n>> (n >= 2) and reduced van Kampen diagrams.

#include <cstdint>
#include <string>
#include <vector>

#include "orelco/complex.hpp"
#include "orelco/orbicomplex.hpp"
#include "orelco/words.hpp"

namespace orelco {

enum class DehnThreshold {
  half,   // match longer than half of |w^n|
  newman  // match longer than (n-1)|w|
};

/// One replacement: u[position, position+length) equals the factor of length
/// `length` starting at `rotation` in w^n (sign +1) or w^-n (sign -1), and is
/// replaced by the inverse of the complementary factor.
struct DehnStep {
  std::size_t position = 0;
  std::size_t length = 0;
  std::size_t rotation = 0;
  int sign = 1;

  bool operator==(const DehnStep&) const = default;
};

struct DehnResult {
  bool trivial = false;
  Word input;    // freely reduced input
  Word remnant;  // empty when trivial
  std::vector<DehnStep> trace;
};

/// Requires a rose orbicomplex with n >= 2 (precondition "torsion_free" otherwise).
DehnResult dehn_solve(const Word& u, const OneRelatorOrbicomplex& x,
                      DehnThreshold threshold = DehnThreshold::half);

std::string format_dehn_trace(const std::vector<DehnStep>& trace);

struct VanKampenDiagram {
  TwoComplex diagram;                 // edges labeled by generator names
  std::vector<DartId> boundary_path;  // closed path from the base vertex
  Word boundary_word;
  OrbiMorphism labeling;
  bool reduced = false;
};

/// Replays the Dehn trace as cell gluings, then cancels mirror pairs. Throws
/// precondition "nontrivial_word" if u is not trivial, and invariant_breach
/// "non_cancellable_mirror" if a mirror configuration cannot be removed.
VanKampenDiagram build_reduced_diagram(const Word& u, OrbicomplexRef x);

/// Edges carrying two cell sides that meet the same side of D_n.
std::vector<EdgeId> mirror_edges(const VanKampenDiagram& d);

/// Word read along a path of rose-labeled darts.
Word read_path(const TwoComplex& c, const std::vector<DartId>& path, const Alphabet& alphabet);

}  // namespace orelco
