#pragma once

// Combinatorial graphs, 2-complexes and cellular maps between them.
//
// Edges are stored as dart pairs: edge e owns darts 2e (forward, tail -> head)
// and 2e+1 (reverse). The involution d -> d^1 is therefore fixed-point free by
// construction. A 2-cell is a cyclic sequence of darts forming a closed path.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orelco {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using DartId = std::uint32_t;
using CellId = std::uint32_t;

constexpr DartId forward_dart(EdgeId e) noexcept { return e << 1; }
constexpr DartId reverse(DartId d) noexcept { return d ^ 1u; }
constexpr EdgeId edge_of(DartId d) noexcept { return d >> 1; }
constexpr bool is_forward(DartId d) noexcept { return (d & 1u) == 0; }

/// "a" <-> "a~".
std::string inverse_symbol(std::string_view symbol);

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  std::string name;
  std::string label;  // symbol read along the forward dart; empty when unlabeled

  bool operator==(const Edge&) const = default;
};

class Graph {
 public:
  VertexId add_vertex(std::string name = {});
  EdgeId add_edge(VertexId tail, VertexId head, std::string name = {},
                  std::string label = {});

  std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t dart_count() const noexcept { return 2 * edges_.size(); }

  VertexId origin(DartId d) const {
    const Edge& e = edges_[edge_of(d)];
    return is_forward(d) ? e.tail : e.head;
  }
  VertexId terminus(DartId d) const { return origin(reverse(d)); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::vector<std::string>& vertex_names() const noexcept {
    return vertex_names_;
  }

  /// Darts whose origin is `v`, in increasing id order.
  const std::vector<DartId>& link(VertexId v) const { return links_[v]; }

  /// Label read along `d`; empty if the edge is unlabeled.
  std::string dart_label(DartId d) const;
  bool labeled() const;

  bool operator==(const Graph& other) const {
    return vertex_names_ == other.vertex_names_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<DartId>> links_;
};

struct Cell {
  std::vector<DartId> boundary;
  std::string name;

  bool operator==(const Cell&) const = default;
};

class TwoComplex {
 public:
  TwoComplex() = default;
  explicit TwoComplex(Graph skeleton) : skeleton_(std::move(skeleton)) {}

  VertexId add_vertex(std::string name = {}) {
    return skeleton_.add_vertex(std::move(name));
  }
  EdgeId add_edge(VertexId tail, VertexId head, std::string name = {},
                  std::string label = {}) {
    return skeleton_.add_edge(tail, head, std::move(name), std::move(label));
  }
  /// Appends a 2-cell. Only structural checks happen here (non-empty, darts in
  /// range); closedness is reported by validate_complex.
  CellId add_cell(std::vector<DartId> boundary, std::string name = {});

  const Graph& skeleton() const noexcept { return skeleton_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(CellId c) const { return cells_[c]; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  std::size_t vertex_count() const noexcept { return skeleton_.vertex_count(); }
  std::size_t edge_count() const noexcept { return skeleton_.edge_count(); }

  std::optional<VertexId> base() const noexcept { return base_; }
  void set_base(std::optional<VertexId> v) { base_ = v; }
  /// Base vertex if set, otherwise vertex 0.
  VertexId distinguished_vertex() const noexcept { return base_.value_or(0); }

  bool operator==(const TwoComplex&) const = default;

 private:
  Graph skeleton_;
  std::vector<Cell> cells_;
  std::optional<VertexId> base_;
};

using ComplexRef = std::shared_ptr<const TwoComplex>;

inline ComplexRef share(TwoComplex c) {
  return std::make_shared<const TwoComplex>(std::move(c));
}

// ---------------------------------------------------------------------------
// Cell alignments.
//
// A source cell of length L is carried onto a target cell of the same length.
// With offset o, a positive alignment sends position i to target position
// (i + o) mod L; a negative alignment sends i to (-i - o - 1) mod L and
// traverses the target dart backwards.

enum class Orientation : std::int8_t { positive = 1, negative = -1 };

struct Alignment {
  std::uint32_t offset = 0;
  Orientation orientation = Orientation::positive;

  bool operator==(const Alignment&) const = default;
};

std::uint32_t aligned_position(Alignment a, std::uint32_t i, std::uint32_t length);
/// outer after inner.
Alignment compose(Alignment outer, Alignment inner, std::uint32_t length);
Alignment inverse(Alignment a, std::uint32_t length);
/// The dart that position i of an aligned source cell maps onto.
DartId aligned_dart(std::span<const DartId> target_path, Alignment a, std::uint32_t i);

// ---------------------------------------------------------------------------
// Cellular maps.

struct CellImage {
  CellId cell = 0;
  Alignment alignment;

  bool operator==(const CellImage&) const = default;
};

struct CellMorphism {
  ComplexRef source;
  ComplexRef target;
  std::vector<VertexId> vertex_map;
  std::vector<DartId> edge_map;  // image of each source edge's forward dart
  std::vector<CellImage> cell_map;

  DartId image(DartId d) const {
    const DartId f = edge_map[edge_of(d)];
    return is_forward(d) ? f : reverse(f);
  }
};

CellMorphism identity_morphism(ComplexRef c);
/// outer after inner. Throws if inner.target and outer.source differ.
CellMorphism compose(const CellMorphism& outer, const CellMorphism& inner);
/// Equal map data (and equal source/target values).
bool same_maps(const CellMorphism& a, const CellMorphism& b);

enum class MapClass { not_morphism = 0, morphism = 1, immersion = 2, covering = 3 };
std::string_view to_string(MapClass c);

struct Classification {
  MapClass kind = MapClass::not_morphism;
  std::string witness;  // first failing cell/dart/vertex when kind is below covering
};

Classification classify_map(const CellMorphism& m);

// ---------------------------------------------------------------------------
// Queries.

/// Violated invariants, empty when valid.
std::vector<std::string> validate_complex(const TwoComplex& c);

/// dimension 1: |V| - |E|; dimension 2: additionally + |cells|.
std::int64_t euler_characteristic(const TwoComplex& c, int dimension);

/// Component index per vertex, numbered by first vertex in each component.
std::vector<std::uint32_t> component_labels(const Graph& g);
std::size_t component_count(const Graph& g);

/// Number of edges outside a maximal forest: an upper bound for rank pi_1.
std::int64_t rank_witness(const TwoComplex& c);

struct Side {
  CellId cell = 0;
  std::uint32_t position = 0;

  bool operator==(const Side&) const = default;
};

/// For each edge, the cell sides (cell, boundary position) traversing it.
std::vector<std::vector<Side>> sides_by_edge(const TwoComplex& c);

struct FreeFace {
  EdgeId edge = 0;
  CellId cell = 0;
  std::uint32_t position = 0;

  bool operator==(const FreeFace&) const = default;
};

struct FreeStructure {
  std::vector<FreeFace> free_faces;  // edges traversed exactly once
  std::vector<EdgeId> free_edges;    // edges traversed zero times

  bool irreducible() const noexcept { return free_faces.empty(); }
};

FreeStructure find_free_faces_and_edges(const TwoComplex& c);

// ---------------------------------------------------------------------------
// Subcomplexes and collapsing.

/// A subcomplex together with the ambient ids of what was kept (indexed by new id).
struct Subcomplex {
  TwoComplex complex;
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::vector<CellId> cells;
};

/// Keeps the flagged cells, edges and vertices. Every kept edge must have kept
/// endpoints and every kept cell kept edges.
Subcomplex induced_subcomplex(const TwoComplex& c, const std::vector<bool>& keep_vertex,
                              const std::vector<bool>& keep_edge,
                              const std::vector<bool>& keep_cell);

enum class CollapseMode { free_faces, free_faces_and_separating_free_edges };

Subcomplex collapse_with_inclusion(const TwoComplex& c,
                                   CollapseMode mode = CollapseMode::free_faces);
TwoComplex collapse(const TwoComplex& c, CollapseMode mode = CollapseMode::free_faces);

/// The inclusion sub.complex -> ambient.
CellMorphism inclusion_morphism(const Subcomplex& sub, ComplexRef ambient);

}  // namespace orelco
