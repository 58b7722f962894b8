#include <doctest.h>

#include "fixtures.hpp"
#include "oracles/morphisms.hpp"
#include "oracles/oracles.hpp"
#include "orelco/complex_io.hpp"
#include "orelco/error.hpp"
#include "orelco/folding.hpp"
#include "orelco/random.hpp"

using namespace orelco;

TEST_CASE("folding two petals onto one") {
  const ComplexRef two = share(parse_complex("vertex o\nedge a : o -> o\nedge b : o -> o\n"));
  const ComplexRef one = share(parse_complex("vertex o\nedge x : o -> o\n"));
  CellMorphism m;
  m.source = two;
  m.target = one;
  m.vertex_map = {0};
  m.edge_map = {0, 0};
  const FoldResult f = fold(m);
  CHECK(f.folded->edge_count() == 1);
  CHECK(f.trace.size() == 1);
  CHECK(classify_map(f.immersion).kind >= MapClass::immersion);
}

TEST_CASE("identical cells fold together") {
  const UnwrappedCover c = fixture::worked_cover();
  TwoComplex y = *c.cover;
  const auto bd = y.cell(0).boundary;
  y.add_cell(bd, "copy");
  CellMorphism m;
  m.source = share(y);
  m.target = c.cover;
  m.vertex_map = {0, 1};
  for (EdgeId e = 0; e < y.edge_count(); ++e) m.edge_map.push_back(forward_dart(e));
  m.cell_map = {CellImage{0, {}}, CellImage{0, {}}};
  const FoldResult f = fold(m);
  CHECK(f.folded->cell_count() == 1);
  CHECK(oracle::side_injective(f.immersion));
  REQUIRE(f.trace.size() == 1);
  CHECK(f.trace[0].kind == FoldStep::Kind::cell);
}

TEST_CASE("fold rejects non-morphisms") {
  const ComplexRef one = share(parse_complex("vertex o\nedge x : o -> o\n"));
  const ComplexRef two = share(parse_complex("vertex u\nvertex v\nedge y : u -> v\n"));
  CellMorphism m;
  m.source = one;
  m.target = two;
  m.vertex_map = {0};
  m.edge_map = {0};
  CHECK_THROWS_AS(fold(m), Error);
}

TEST_CASE("folding laws on random morphisms") {
  const ComplexRef worked = fixture::worked_cover().cover;
  const auto x = fixture::orbi("a b a b~", 2);
  const ComplexRef bigger = build_unwrapped_cover(x, find_exponent_n_quotient(*x, 8, 1)).cover;
  Rng rng(101);
  for (int t = 0; t < 300; ++t) {
    const CellMorphism m = oracle::random_morphism(rng, t % 2 == 0 ? worked : bigger);
    REQUIRE(classify_map(m).kind >= MapClass::morphism);
    const FoldResult f = fold(m);
    CHECK(validate_complex(*f.folded).empty());
    CHECK(oracle::link_injective(f.immersion));
    CHECK(oracle::side_injective(f.immersion));
    CHECK(oracle::composes_to(f.immersion, f.projection, m));
    CHECK(f.folded->vertex_count() <= m.source->vertex_count());
    CHECK(f.folded->edge_count() <= m.source->edge_count());

    const FoldResult again = fold(f.immersion);
    CHECK(again.trace.empty());
    CHECK(again.folded->edge_count() == f.folded->edge_count());

    const FoldResult other = fold(m, FoldOrder::highest_first);
    if (component_count(m.source->skeleton()) == 1) {
      CHECK(oracle::isomorphic_over(f.immersion, other.immersion));
    }
    CHECK(canonical_form(f.immersion) == canonical_form(other.immersion));
    CHECK(isomorphic_over_target(f.immersion, other.immersion));

    const FoldResult replayed = replay_fold(m, parse_fold_trace(format_fold_trace(f.trace)));
    CHECK(*replayed.folded == *f.folded);
    CHECK(same_maps(replayed.immersion, f.immersion));
  }
}

TEST_CASE("factor_unique through an intermediate immersion") {
  const ComplexRef target = fixture::worked_cover().cover;
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const CellMorphism m = oracle::random_morphism(rng, target);
    const FoldResult f = fold(m);
    // fold the identity of the result: a second, trivial pass through the same complex
    const FoldResult g = fold(f.immersion);
    const CellMorphism u = factor_unique(f, g.immersion, compose(g.projection, f.projection));
    CHECK(classify_map(u).kind >= MapClass::immersion);
    CHECK(oracle::composes_to(g.immersion, u, f.immersion));
    CHECK(oracle::composes_to(u, f.projection, compose(g.projection, f.projection)));

    const CellMorphism through_target = factor_unique(f, identity_morphism(target), m);
    CHECK(same_maps(through_target, f.immersion));
  }
}

TEST_CASE("canonical form separates different immersions") {
  const ComplexRef target = fixture::worked_cover().cover;
  const CellMorphism id = identity_morphism(target);
  TwoComplex loop;
  loop.add_vertex("v");
  loop.add_edge(0, 0, "e");
  CellMorphism b0;
  b0.source = share(loop);
  b0.target = target;
  b0.vertex_map = {0};
  b0.edge_map = {forward_dart(2)};
  CHECK(canonical_form(id) != canonical_form(b0));
  CHECK_FALSE(isomorphic_over_target(id, b0));
}
