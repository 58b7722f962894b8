#pragma once

// Subgroup presentations as stabilizing chains of immersions Y0 -> Y1 -> ... over X0.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orelco/complex.hpp"
#include "orelco/covers.hpp"
#include "orelco/dehn.hpp"
#include "orelco/folding.hpp"
#include "orelco/orbicomplex.hpp"
#include "orelco/words.hpp"

namespace orelco {

struct PipelineBudget {
  std::size_t max_word_length = 12;   // L: longest candidate loop, in edges
  std::size_t max_stages = 200;       // chain extensions
  std::size_t max_steps = 1000000;    // candidates processed, over all sweeps
  std::size_t max_candidates = 500000;
  std::uint32_t max_degree = 8;       // quotient search
  std::uint64_t seed = 1;
};

/// A closed, cyclically reduced edge loop of the seed, up to rotation and inversion.
struct Candidate {
  std::vector<DartId> loop;  // darts of Y0
  Word word;                 // its image in F
  bool trivial = false;      // in G, by the Dehn algorithm
  std::shared_ptr<const VanKampenDiagram> diagram;  // built on first use
};

struct StageRecord {
  std::size_t stage = 0;
  std::int64_t chi1 = 0;
  std::int64_t chi2 = 0;
  std::int64_t cells = 0;
  std::int64_t free_edges = 0;
  std::int64_t core_cells = 0;
  std::size_t cursor = 0;
  std::size_t stable_for = 0;
};

struct PipelineState {
  std::shared_ptr<const UnwrappedCover> cover;
  std::vector<Word> generators;  // inside the kernel of the quotient
  CellMorphism seed_map;         // Y0 -> X0
  CellMorphism current_map;      // Yi -> X0
  CellMorphism seed_to_current;  // Y0 -> Yi
  std::vector<CellMorphism> chain;  // Yi -> Yi+1
  CanonicalForm current_form;
  std::size_t stage = 0;
  std::vector<Candidate> candidates;
  bool candidates_truncated = false;
  std::size_t cursor = 0;
  std::size_t stable_for = 0;
  std::size_t steps = 0;
  std::size_t sweeps = 0;
  bool changed_in_sweep = false;
  std::int64_t seed_free_edges = 0;
  std::int64_t cell_bound = 0;  // floor((g-1)/(n-1))
  std::vector<StageRecord> history;

  const TwoComplex& current() const { return *current_map.source; }
};

/// Wedge of loops spelling the generators, folded over X0. Needs a nontrivial
/// generator ("empty_generators"); each must lift to a closed loop at the base
/// point ("not_in_kernel").
PipelineState seed_immersion(const std::vector<Word>& generators,
                             std::shared_ptr<const UnwrappedCover> cover,
                             const PipelineBudget& budget);

enum class StepOutcome { nontrivial, unchanged, extended };

/// Processes the candidate at the cursor. Throws invariant_breach on a failed hard check.
StepOutcome refine_step(PipelineState& s);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;  // over `generators`

  bool operator==(const Presentation&) const = default;
};

/// "gens: x1 x2 ; rels: x1 x2~ ; x2 x2"
std::string format_presentation(const Presentation& p);
Presentation parse_presentation(std::string_view text);

struct PipelineResult {
  Presentation presentation;
  std::vector<Word> generator_images;  // each presentation generator as a word in F
  bool stabilized = false;             // false: budget exhausted, result inconclusive
  bool finite_index_passage = false;   // H was replaced by its intersection with the kernel
  std::size_t stage = 0;
  std::size_t certificate_level = 0;
  std::size_t sweeps = 0;
  std::size_t steps = 0;
  std::size_t candidate_count = 0;
  std::vector<StageRecord> history;
  std::vector<std::string> notes;
  std::shared_ptr<const UnwrappedCover> cover;
  std::vector<Word> kernel_generators;
  std::optional<PipelineState> final_state;
};

PipelineResult present_subgroup(const std::vector<Word>& generators, OrbicomplexRef x,
                                 const PipelineBudget& budget);

/// Presentation read off a complex immersed in X0: spanning tree from the base,
/// non-tree edges as generators, cell boundaries as relators.
PipelineResult extract_presentation(const PipelineState& s);

/// Stage table as CSV: stage,chi1,chi2,cells,free_edges,core_cells,cursor,stable_for
std::string format_stage_table(const std::vector<StageRecord>& history);

/// Reads `u` from the base of the immersed complex; nullopt if the path leaves it
/// or does not close. The result lists the darts traversed.
std::optional<std::vector<DartId>> trace_word(const CellMorphism& immersion,
                                              const UnwrappedCover& cover, const Word& u);

/// Composite Y -> X0 -> X as an orbicomplex morphism.
OrbiMorphism over_orbicomplex(const CellMorphism& into_cover, const UnwrappedCover& cover);

}  // namespace orelco
