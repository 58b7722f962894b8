#include <doctest.h>

#include "fixtures.hpp"
#include "oracles/oracles.hpp"
#include "orelco/complex.hpp"
#include "orelco/complex_io.hpp"
#include "orelco/error.hpp"

using namespace orelco;

namespace {

const char* const rose_text =
    "vertex o\n"
    "edge a : o -> o\n"
    "edge b : o -> o\n";

const char* const x0_text =
    "vertex p0\n"
    "vertex p1\n"
    "edge a0 : p0 -> p1\n"
    "edge a1 : p1 -> p0\n"
    "edge b0 : p0 -> p0\n"
    "edge b1 : p1 -> p1\n"
    "cell c : a0 b1 a1 b0\n";

}  // namespace

TEST_CASE("rose without cells validates and has chi -1") {
  const TwoComplex c = parse_complex(rose_text);
  CHECK(validate_complex(c).empty());
  CHECK(euler_characteristic(c, 1) == -1);
  CHECK(euler_characteristic(c, 2) == oracle::euler(c, true));
}

TEST_CASE("broken attaching path is reported") {
  TwoComplex c;
  c.add_vertex();
  c.add_vertex();
  c.add_edge(0, 1, "x");
  c.add_edge(0, 1, "y");
  c.add_cell({forward_dart(0), forward_dart(1)});
  const auto problems = validate_complex(c);
  REQUIRE_FALSE(problems.empty());
  CHECK(problems.front().find("non-closed attaching path") != std::string::npos);
  CHECK_THROWS_AS(parse_complex("vertex u\nvertex v\nedge x : u -> v\nedge y : u -> v\ncell c : x y\n"),
                  Error);
}

TEST_CASE("worked two-vertex complex validates with chi -1") {
  const TwoComplex c = parse_complex(x0_text);
  CHECK(validate_complex(c).empty());
  CHECK(c.vertex_count() == 2);
  CHECK(c.edge_count() == 4);
  CHECK(euler_characteristic(c, 2) == -1);
  CHECK(euler_characteristic(c, 2) == oracle::euler(c, true));
}

TEST_CASE("single vertex has chi 1 in both dimensions") {
  TwoComplex c;
  c.add_vertex();
  CHECK(euler_characteristic(c, 1) == 1);
  CHECK(euler_characteristic(c, 2) == 1);
}

TEST_CASE("identity is a covering") {
  const ComplexRef c = share(parse_complex(x0_text));
  CHECK(classify_map(identity_morphism(c)).kind == MapClass::covering);
}

TEST_CASE("two petals onto one petal are a morphism but not an immersion") {
  const ComplexRef two = share(parse_complex(rose_text));
  const ComplexRef one = share(parse_complex("vertex o\nedge x : o -> o\n"));
  CellMorphism m;
  m.source = two;
  m.target = one;
  m.vertex_map = {0};
  m.edge_map = {forward_dart(0), forward_dart(0)};
  const Classification c = classify_map(m);
  CHECK(c.kind == MapClass::morphism);
  CHECK_FALSE(oracle::link_injective(m));
  CHECK_FALSE(c.witness.empty());
}

TEST_CASE("free faces and free edges") {
  SUBCASE("disk on a loop") {
    const TwoComplex c = parse_complex("vertex o\nedge a : o -> o\ncell d : a\n");
    const FreeStructure f = find_free_faces_and_edges(c);
    REQUIRE(f.free_faces.size() == 1);
    CHECK(f.free_faces[0].edge == 0);
    CHECK(f.free_edges.empty());
  }
  SUBCASE("worked complex: every edge is a free face") {
    const FreeStructure f = find_free_faces_and_edges(parse_complex(x0_text));
    CHECK(f.free_faces.size() == 4);
    CHECK(f.free_edges.empty());
    CHECK_FALSE(f.irreducible());
  }
  SUBCASE("rose: every edge is free") {
    const FreeStructure f = find_free_faces_and_edges(parse_complex(rose_text));
    CHECK(f.free_faces.empty());
    CHECK(f.free_edges.size() == 2);
  }
}

TEST_CASE("collapse") {
  SUBCASE("disk collapses to a point") {
    const TwoComplex c = collapse(parse_complex("vertex o\nedge a : o -> o\ncell d : a\n"));
    CHECK(c.vertex_count() == 1);
    CHECK(c.edge_count() == 0);
    CHECK(c.cell_count() == 0);
  }
  SUBCASE("cell a b a~ collapses through its free face b") {
    const TwoComplex in = parse_complex(std::string(rose_text) + "cell c : a b a~\n");
    const TwoComplex out = collapse(in);
    CHECK(out.cell_count() == 0);
    REQUIRE(out.edge_count() == 1);
    CHECK(out.skeleton().edge(0).name == "a");
    CHECK(euler_characteristic(out, 2) == euler_characteristic(in, 2));
    CHECK(rank_witness(out) == 1);
  }
  SUBCASE("irreducible input is a fixpoint") {
    const TwoComplex in = parse_complex(std::string(rose_text) + "cell c : a b a~ b~\n");
    CHECK(find_free_faces_and_edges(in).irreducible());
    CHECK(collapse(in) == in);
  }
  SUBCASE("separating free edges are pruned in the extended mode") {
    const TwoComplex in = parse_complex(
        "vertex o\nvertex t\nedge a : o -> o\nedge s : o -> t\nedge b : o -> o\n"
        "cell c : a b a~ b~\nbase o\n");
    CHECK(collapse(in).edge_count() == 3);
    const TwoComplex out = collapse(in, CollapseMode::free_faces_and_separating_free_edges);
    CHECK(out.vertex_count() == 1);
    CHECK(out.edge_count() == 2);
  }
}

TEST_CASE("alignments compose and invert") {
  const std::uint32_t len = 6;
  for (std::uint32_t o1 = 0; o1 < len; ++o1)
    for (std::uint32_t o2 = 0; o2 < len; ++o2)
      for (auto s1 : {Orientation::positive, Orientation::negative})
        for (auto s2 : {Orientation::positive, Orientation::negative}) {
          const Alignment a{o1, s1};
          const Alignment b{o2, s2};
          const Alignment ab = compose(a, b, len);
          for (std::uint32_t i = 0; i < len; ++i) {
            CHECK(aligned_position(ab, i, len) ==
                  aligned_position(a, aligned_position(b, i, len), len));
            CHECK(aligned_position(inverse(a, len), aligned_position(a, i, len), len) == i);
          }
        }
}

TEST_CASE("complex text round-trips") {
  const TwoComplex c = parse_complex(std::string(x0_text) + "base p1\n");
  CHECK(parse_complex(format_complex(c)) == c);
  const TwoComplex labeled = *fixture::worked_cover().cover;
  REQUIRE(labeled.skeleton().labeled());
  CHECK(parse_complex(format_complex(labeled)) == labeled);
}

TEST_CASE("morphism text round-trips") {
  const ComplexRef c = share(parse_complex(x0_text));
  const CellMorphism id = identity_morphism(c);
  const CellMorphism back = parse_morphism(format_morphism(id), c, c);
  CHECK(same_maps(back, id));
}

TEST_CASE("parse errors name the line") {
  try {
    parse_complex("vertex o\nedge a : o -> q\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("dot export mentions labels and sides") {
  const std::string dot = export_dot(*fixture::worked_cover().cover);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("a_0:a") != std::string::npos);
}
