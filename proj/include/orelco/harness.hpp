#pragma once

// Random immersions over one-relator orbicomplexes and seeded property campaigns.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orelco/complex.hpp"
#include "orelco/orbicomplex.hpp"

namespace orelco {

struct GeneratorParams {
  std::uint32_t max_vertices = 6;   // V is drawn from 1..max_vertices
  double edge_probability = 0.85;   // per vertex and generator, in a partial injection
  double cell_probability = 0.7;    // per closed lift of w^n
};

/// Random immersed graph (one partial injection per generator, component of
/// vertex 0), closed lifts of w^n attached when they keep the map an immersion,
/// then free faces collapsed. Requires a rose.
OrbiMorphism random_irreducible_immersion(std::uint64_t seed, OrbicomplexRef x,
                                          const GeneratorParams& params);

enum class Suite { wcycles, folding, covers };

struct CampaignConfig {
  std::uint64_t master_seed = 1;
  std::size_t trials = 1000;        // audited immersions / random morphisms
  std::size_t cover_trials = 50;    // random quotients
  OrbicomplexRef x;
  GeneratorParams params;
  std::vector<Suite> suites{Suite::wcycles, Suite::folding, Suite::covers};
};

struct TrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  WcyclesReport report;
};

struct CampaignReport {
  std::vector<TrialRow> rows;              // w-cycles suite, by trial index
  std::size_t wcycles_passed = 0;
  std::size_t degenerate = 0;              // draws with a contractible core, not audited
  std::map<std::int64_t, std::size_t> slack1_histogram;
  std::size_t fold_checks = 0;
  std::size_t cover_checks = 0;            // quotients found and verified
  std::size_t quotients_not_found = 0;
  bool pass = true;
};

/// Any violation throws invariant_breach naming the suite, trial and seed.
CampaignReport run_property_campaign(const CampaignConfig& cfg);

/// trial,seed,V,E,cells,chi1,deg,slack1,chi2,slack2,pass
std::string campaign_csv(const CampaignReport& r);
std::string campaign_summary(const CampaignReport& r);

/// Single-trial checks, exposed for replaying a reported seed.
void check_fold_trial(std::uint64_t seed, OrbicomplexRef x, const GeneratorParams& params);
/// False when no quotient turned up for this seed.
bool check_cover_trial(std::uint64_t seed, OrbicomplexRef x);

}  // namespace orelco
