#pragma once

#include <string>
#include <vector>

#include "orelco/complex.hpp"
#include "orelco/random.hpp"

namespace oracle {

using namespace orelco;

inline DartId target_dart(const std::vector<DartId>& path, Alignment a, std::uint32_t i) {
  const auto len = static_cast<std::uint32_t>(path.size());
  if (a.orientation == Orientation::positive) return path[(i + a.offset) % len];
  return reverse(path[(2 * len - i - a.offset - 1) % len]);
}

/// Random morphism onto `target`: scattered edges plus lifted cell boundaries,
/// with endpoints glued to existing vertices over the same image at random.
inline CellMorphism random_morphism(Rng& rng, ComplexRef target) {
  const Graph& tg = target->skeleton();
  TwoComplex src;
  std::vector<VertexId> vmap;
  std::vector<DartId> emap;
  std::vector<CellImage> cmap;
  auto vertex_over = [&](VertexId t) -> VertexId {
    std::vector<VertexId> options;
    for (VertexId v = 0; v < vmap.size(); ++v)
      if (vmap[v] == t) options.push_back(v);
    if (!options.empty() && rng.chance(0.6)) return options[rng.below(options.size())];
    vmap.push_back(t);
    return src.add_vertex("v" + std::to_string(vmap.size() - 1));
  };
  auto edge_over = [&](VertexId tail, VertexId head, DartId d) {
    const EdgeId e = is_forward(d) ? src.add_edge(tail, head, "e" + std::to_string(emap.size()))
                                   : src.add_edge(head, tail, "e" + std::to_string(emap.size()));
    emap.push_back(is_forward(d) ? d : reverse(d));
    return is_forward(d) ? forward_dart(e) : reverse(forward_dart(e));
  };
  vertex_over(static_cast<VertexId>(rng.below(tg.vertex_count())));
  const auto loose = rng.below(6);
  for (std::uint64_t i = 0; i < loose; ++i) {
    const auto d = static_cast<DartId>(rng.below(tg.dart_count()));
    const VertexId a = vertex_over(tg.origin(d));
    const VertexId b = vertex_over(tg.terminus(d));
    edge_over(a, b, d);
  }
  const auto cells = target->cell_count() == 0 ? 0 : rng.below(4);
  for (std::uint64_t k = 0; k < cells; ++k) {
    const auto t = static_cast<CellId>(rng.below(target->cell_count()));
    const auto& path = target->cell(t).boundary;
    const auto len = static_cast<std::uint32_t>(path.size());
    const Alignment al{static_cast<std::uint32_t>(rng.below(len)),
                       rng.chance(0.5) ? Orientation::positive : Orientation::negative};
    std::vector<VertexId> corners;
    for (std::uint32_t i = 0; i < len; ++i) corners.push_back(vertex_over(tg.origin(target_dart(path, al, i))));
    std::vector<DartId> bd;
    for (std::uint32_t i = 0; i < len; ++i)
      bd.push_back(edge_over(corners[i], corners[(i + 1) % len], target_dart(path, al, i)));
    src.add_cell(bd, "c" + std::to_string(k));
    cmap.push_back({t, al});
  }
  CellMorphism m;
  m.source = share(std::move(src));
  m.target = std::move(target);
  m.vertex_map = vmap;
  m.edge_map = emap;
  m.cell_map = cmap;
  return m;
}

/// Dart-exact check that outer after inner equals whole.
inline bool composes_to(const CellMorphism& outer, const CellMorphism& inner, const CellMorphism& whole) {
  for (VertexId v = 0; v < whole.source->vertex_count(); ++v)
    if (outer.vertex_map[inner.vertex_map[v]] != whole.vertex_map[v]) return false;
  for (DartId d = 0; d < whole.source->skeleton().dart_count(); ++d)
    if (outer.image(inner.image(d)) != whole.image(d)) return false;
  for (CellId k = 0; k < whole.source->cell_count(); ++k)
    if (outer.cell_map[inner.cell_map[k].cell].cell != whole.cell_map[k].cell) return false;
  return true;
}

}  // namespace oracle
