#include <doctest.h>

#include "fixtures.hpp"
#include "oracles/oracles.hpp"
#include "orelco/error.hpp"
#include "orelco/harness.hpp"
#include "orelco/text.hpp"

using namespace orelco;

TEST_CASE("derived seeds are stable and distinct") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("random immersions are reproducible from the seed") {
  const auto x = fixture::orbi("a b", 3);
  for (std::uint64_t seed = 1; seed < 30; ++seed) {
    const OrbiMorphism m1 = random_irreducible_immersion(seed, x, GeneratorParams{});
    const OrbiMorphism m2 = random_irreducible_immersion(seed, x, GeneratorParams{});
    CHECK(*m1.source == *m2.source);
    CHECK(m1.edge_map == m2.edge_map);
    CHECK(find_free_faces_and_edges(*m1.source).irreducible());
    CHECK(component_count(m1.source->skeleton()) == 1);
  }
}

TEST_CASE("random immersions carry cells when the relator allows it") {
  const auto x = fixture::orbi("a b a b~", 3);
  GeneratorParams p;
  p.cell_probability = 1.0;
  std::size_t with_cells = 0;
  for (std::uint64_t seed = 1; seed < 200; ++seed) {
    const OrbiMorphism m = random_irreducible_immersion(seed, x, p);
    if (m.source->cell_count() > 0) ++with_cells;
    CHECK(oracle::orbi_side_injective(m));
  }
  CHECK(with_cells > 0);
}

TEST_CASE("an empty campaign passes") {
  CampaignConfig cfg;
  cfg.x = fixture::orbi("a b", 2);
  cfg.trials = 0;
  cfg.cover_trials = 0;
  const CampaignReport r = run_property_campaign(cfg);
  CHECK(r.pass);
  CHECK(r.rows.empty());
  CHECK(campaign_csv(r) == "trial,seed,V,E,cells,chi1,deg,slack1,chi2,slack2,pass\n");
}

TEST_CASE("small campaigns pass and are deterministic") {
  CampaignConfig cfg;
  cfg.x = fixture::orbi("a b a b~", 2);
  cfg.trials = 60;
  cfg.cover_trials = 5;
  const CampaignReport r = run_property_campaign(cfg);
  CHECK(r.pass);
  CHECK(r.rows.size() == 60);
  CHECK(r.wcycles_passed == 60);
  CHECK(r.fold_checks == 60);
  CHECK(r.cover_checks == 5);
  for (const TrialRow& row : r.rows) {
    CHECK(row.report.slack1 <= 0);
    CHECK(row.report.slack2 <= 0);
  }
  const CampaignReport again = run_property_campaign(cfg);
  CHECK(campaign_csv(again) == campaign_csv(r));
  CHECK(campaign_summary(again) == campaign_summary(r));
  CHECK(split_lines(campaign_csv(r)).size() == 61);
}

TEST_CASE("single trials replay") {
  const auto x = fixture::orbi("a b", 2);
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    CHECK_NOTHROW(check_fold_trial(seed, x, GeneratorParams{}));
    CHECK_NOTHROW(check_cover_trial(seed, x));
  }
}

TEST_CASE("campaigns need a target") {
  CampaignConfig cfg;
  cfg.trials = 3;
  CHECK_THROWS_AS(run_property_campaign(cfg), Error);
}
