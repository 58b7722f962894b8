#include "orelco/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "orelco/error.hpp"

namespace orelco {

std::string inverse_symbol(std::string_view symbol) {
  if (!symbol.empty() && symbol.back() == '~')
    return std::string(symbol.substr(0, symbol.size() - 1));
  return std::string(symbol) + "~";
}

VertexId Graph::add_vertex(std::string name) {
  const auto id = static_cast<VertexId>(vertex_names_.size());
  if (name.empty()) name = "v" + std::to_string(id);
  vertex_names_.push_back(std::move(name));
  links_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(VertexId tail, VertexId head, std::string name,
                       std::string label) {
  if (tail >= vertex_count() || head >= vertex_count())
    throw Error(ErrorKind::invalid_input, "unknown_vertex",
                "edge endpoint out of range");
  const auto id = static_cast<EdgeId>(edges_.size());
  if (name.empty()) name = "e" + std::to_string(id);
  edges_.push_back({tail, head, std::move(name), std::move(label)});
  links_[tail].push_back(forward_dart(id));
  links_[head].push_back(reverse(forward_dart(id)));
  return id;
}

std::string Graph::dart_label(DartId d) const {
  const std::string& l = edges_[edge_of(d)].label;
  if (l.empty() || is_forward(d)) return l;
  return inverse_symbol(l);
}

bool Graph::labeled() const {
  return !edges_.empty() &&
         std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return !e.label.empty(); });
}

CellId TwoComplex::add_cell(std::vector<DartId> boundary, std::string name) {
  if (boundary.empty())
    throw Error(ErrorKind::invalid_input, "empty_cell", "attaching path must be nonempty");
  for (DartId d : boundary)
    if (d >= skeleton_.dart_count())
      throw Error(ErrorKind::invalid_input, "unknown_edge", "dart out of range");
  const auto id = static_cast<CellId>(cells_.size());
  if (name.empty()) name = "c" + std::to_string(id);
  cells_.push_back({std::move(boundary), std::move(name)});
  return id;
}

std::uint32_t aligned_position(Alignment a, std::uint32_t i, std::uint32_t length) {
  const std::uint32_t o = a.offset % length;
  i %= length;
  if (a.orientation == Orientation::positive) return (i + o) % length;
  return (2 * length - i - o - 1) % length;
}

Alignment compose(Alignment outer, Alignment inner, std::uint32_t length) {
  const std::uint32_t a = inner.offset % length;
  const std::uint32_t b = outer.offset % length;
  const bool inner_pos = inner.orientation == Orientation::positive;
  const bool outer_pos = outer.orientation == Orientation::positive;
  if (inner_pos) {
    return {(a + b) % length, outer.orientation};
  }
  const std::uint32_t diff = (a + length - b) % length;
  return {diff, outer_pos ? Orientation::negative : Orientation::positive};
}

Alignment inverse(Alignment a, std::uint32_t length) {
  const std::uint32_t o = a.offset % length;
  if (a.orientation == Orientation::negative) return {o, Orientation::negative};
  return {(length - o) % length, Orientation::positive};
}

DartId aligned_dart(std::span<const DartId> target_path, Alignment a, std::uint32_t i) {
  const auto length = static_cast<std::uint32_t>(target_path.size());
  const DartId d = target_path[aligned_position(a, i, length)];
  return a.orientation == Orientation::positive ? d : reverse(d);
}

CellMorphism identity_morphism(ComplexRef c) {
  CellMorphism m;
  m.source = c;
  m.target = c;
  m.vertex_map.resize(c->vertex_count());
  std::iota(m.vertex_map.begin(), m.vertex_map.end(), 0u);
  m.edge_map.resize(c->edge_count());
  for (EdgeId e = 0; e < c->edge_count(); ++e) m.edge_map[e] = forward_dart(e);
  m.cell_map.resize(c->cell_count());
  for (CellId k = 0; k < c->cell_count(); ++k) m.cell_map[k] = {k, {}};
  return m;
}

CellMorphism compose(const CellMorphism& outer, const CellMorphism& inner) {
  if (inner.target != outer.source && !(*inner.target == *outer.source))
    throw Error(ErrorKind::precondition, "not_composable",
                "inner target differs from outer source");
  CellMorphism m;
  m.source = inner.source;
  m.target = outer.target;
  m.vertex_map.reserve(inner.vertex_map.size());
  for (VertexId v : inner.vertex_map) m.vertex_map.push_back(outer.vertex_map[v]);
  m.edge_map.reserve(inner.edge_map.size());
  for (DartId d : inner.edge_map) m.edge_map.push_back(outer.image(d));
  m.cell_map.reserve(inner.cell_map.size());
  for (const CellImage& ci : inner.cell_map) {
    const CellImage& co = outer.cell_map[ci.cell];
    const auto length =
        static_cast<std::uint32_t>(outer.target->cell(co.cell).boundary.size());
    m.cell_map.push_back({co.cell, compose(co.alignment, ci.alignment, length)});
  }
  return m;
}

bool same_maps(const CellMorphism& a, const CellMorphism& b) {
  if (a.vertex_map != b.vertex_map || a.edge_map != b.edge_map) return false;
  if (a.cell_map.size() != b.cell_map.size()) return false;
  for (std::size_t k = 0; k < a.cell_map.size(); ++k) {
    if (a.cell_map[k].cell != b.cell_map[k].cell) return false;
    const auto length = static_cast<std::uint32_t>(
        a.target->cell(a.cell_map[k].cell).boundary.size());
    const Alignment x = a.cell_map[k].alignment;
    const Alignment y = b.cell_map[k].alignment;
    if (x.orientation != y.orientation || x.offset % length != y.offset % length)
      return false;
  }
  const auto same = [](const ComplexRef& p, const ComplexRef& q) {
    return p == q || (p && q && *p == *q);
  };
  return same(a.source, b.source) && same(a.target, b.target);
}

std::string_view to_string(MapClass c) {
  switch (c) {
    case MapClass::not_morphism: return "not_morphism";
    case MapClass::morphism: return "morphism";
    case MapClass::immersion: return "immersion";
    case MapClass::covering: return "covering";
  }
  return "not_morphism";
}

namespace {

Classification structural_check(const CellMorphism& m) {
  const TwoComplex& s = *m.source;
  const TwoComplex& t = *m.target;
  const Graph& sg = s.skeleton();
  const Graph& tg = t.skeleton();
  if (m.vertex_map.size() != s.vertex_count() || m.edge_map.size() != s.edge_count() ||
      m.cell_map.size() != s.cell_count())
    return {MapClass::not_morphism, "map sizes do not match the source"};
  for (VertexId v = 0; v < s.vertex_count(); ++v)
    if (m.vertex_map[v] >= t.vertex_count())
      return {MapClass::not_morphism, "vertex " + sg.vertex_name(v) + " maps out of range"};
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    const DartId img = m.edge_map[e];
    if (img >= tg.dart_count())
      return {MapClass::not_morphism, "edge " + sg.edge(e).name + " maps out of range"};
    const DartId d = forward_dart(e);
    if (tg.origin(img) != m.vertex_map[sg.origin(d)] ||
        tg.terminus(img) != m.vertex_map[sg.terminus(d)])
      return {MapClass::not_morphism,
              "edge " + sg.edge(e).name + " does not commute with incidence"};
  }
  for (CellId c = 0; c < s.cell_count(); ++c) {
    const CellImage& ci = m.cell_map[c];
    if (ci.cell >= t.cell_count())
      return {MapClass::not_morphism, "cell " + s.cell(c).name + " maps out of range"};
    const auto& src = s.cell(c).boundary;
    const auto& tgt = t.cell(ci.cell).boundary;
    if (src.size() != tgt.size())
      return {MapClass::not_morphism, "cell " + s.cell(c).name + " length mismatch"};
    for (std::uint32_t i = 0; i < src.size(); ++i)
      if (m.image(src[i]) != aligned_dart(tgt, ci.alignment, i))
        return {MapClass::not_morphism, "cell " + s.cell(c).name + " position " +
                                            std::to_string(i) + " misaligned"};
  }
  return {MapClass::morphism, {}};
}

}  // namespace

Classification classify_map(const CellMorphism& m) {
  if (!m.source || !m.target) return {MapClass::not_morphism, "missing complex"};
  Classification result = structural_check(m);
  if (result.kind == MapClass::not_morphism) return result;

  const TwoComplex& s = *m.source;
  const TwoComplex& t = *m.target;
  const Graph& sg = s.skeleton();
  const Graph& tg = t.skeleton();

  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    std::vector<DartId> images;
    for (DartId d : sg.link(v)) images.push_back(m.image(d));
    std::sort(images.begin(), images.end());
    const auto dup = std::adjacent_find(images.begin(), images.end());
    if (dup != images.end())
      return {MapClass::morphism, "vertex " + sg.vertex_name(v) +
                                      " link not injective at dart image " +
                                      std::to_string(*dup)};
  }
  const auto src_sides = sides_by_edge(s);
  const auto tgt_sides = sides_by_edge(t);
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    std::vector<std::pair<CellId, std::uint32_t>> images;
    for (const Side& side : src_sides[e]) {
      const CellImage& ci = m.cell_map[side.cell];
      const auto length = static_cast<std::uint32_t>(t.cell(ci.cell).boundary.size());
      images.emplace_back(ci.cell, aligned_position(ci.alignment, side.position, length));
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return {MapClass::morphism, "edge " + sg.edge(e).name + " sides not injective"};
  }
  result = {MapClass::immersion, {}};

  for (VertexId v = 0; v < s.vertex_count(); ++v)
    if (sg.link(v).size() != tg.link(m.vertex_map[v]).size())
      return {MapClass::immersion, "vertex " + sg.vertex_name(v) + " link not surjective"};
  for (EdgeId e = 0; e < s.edge_count(); ++e)
    if (src_sides[e].size() != tgt_sides[edge_of(m.edge_map[e])].size())
      return {MapClass::immersion, "edge " + sg.edge(e).name + " sides not surjective"};
  return {MapClass::covering, {}};
}

std::vector<std::string> validate_complex(const TwoComplex& c) {
  std::vector<std::string> problems;
  const Graph& g = c.skeleton();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (edge.tail >= g.vertex_count() || edge.head >= g.vertex_count())
      problems.push_back("edge " + edge.name + " has an unknown endpoint");
  }
  for (CellId k = 0; k < c.cell_count(); ++k) {
    const Cell& cell = c.cell(k);
    if (cell.boundary.empty()) {
      problems.push_back("empty attaching path: cell " + cell.name);
      continue;
    }
    bool in_range = true;
    for (DartId d : cell.boundary)
      if (d >= g.dart_count()) in_range = false;
    if (!in_range) {
      problems.push_back("unknown dart in attaching path: cell " + cell.name);
      continue;
    }
    const std::size_t length = cell.boundary.size();
    for (std::size_t i = 0; i < length; ++i) {
      const DartId here = cell.boundary[i];
      const DartId next = cell.boundary[(i + 1) % length];
      if (g.terminus(here) != g.origin(next)) {
        problems.push_back("non-closed attaching path: cell " + cell.name + " position " +
                           std::to_string(i));
        break;
      }
    }
  }
  if (c.base() && *c.base() >= g.vertex_count())
    problems.push_back("base vertex out of range");
  return problems;
}

std::int64_t euler_characteristic(const TwoComplex& c, int dimension) {
  if (dimension != 1 && dimension != 2)
    throw Error(ErrorKind::precondition, "bad_dimension", "dimension must be 1 or 2");
  std::int64_t chi = static_cast<std::int64_t>(c.vertex_count()) -
                     static_cast<std::int64_t>(c.edge_count());
  if (dimension == 2) chi += static_cast<std::int64_t>(c.cell_count());
  return chi;
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(g.vertex_count(), unset);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId start = 0; start < g.vertex_count(); ++start) {
    if (label[start] != unset) continue;
    label[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (DartId d : g.link(v)) {
        const VertexId w = g.terminus(d);
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(const Graph& g) {
  const auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::int64_t rank_witness(const TwoComplex& c) {
  return static_cast<std::int64_t>(c.edge_count()) -
         static_cast<std::int64_t>(c.vertex_count()) +
         static_cast<std::int64_t>(component_count(c.skeleton()));
}

std::vector<std::vector<Side>> sides_by_edge(const TwoComplex& c) {
  std::vector<std::vector<Side>> sides(c.edge_count());
  for (CellId k = 0; k < c.cell_count(); ++k) {
    const auto& b = c.cell(k).boundary;
    for (std::uint32_t i = 0; i < b.size(); ++i) sides[edge_of(b[i])].push_back({k, i});
  }
  return sides;
}

FreeStructure find_free_faces_and_edges(const TwoComplex& c) {
  FreeStructure out;
  const auto sides = sides_by_edge(c);
  for (EdgeId e = 0; e < c.edge_count(); ++e) {
    if (sides[e].empty())
      out.free_edges.push_back(e);
    else if (sides[e].size() == 1)
      out.free_faces.push_back({e, sides[e][0].cell, sides[e][0].position});
  }
  return out;
}

Subcomplex induced_subcomplex(const TwoComplex& c, const std::vector<bool>& keep_vertex,
                              const std::vector<bool>& keep_edge,
                              const std::vector<bool>& keep_cell) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  const Graph& g = c.skeleton();
  Subcomplex sub;
  std::vector<VertexId> vnew(c.vertex_count(), unset);
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    if (!keep_vertex[v]) continue;
    vnew[v] = sub.complex.add_vertex(g.vertex_name(v));
    sub.vertices.push_back(v);
  }
  std::vector<EdgeId> enew(c.edge_count(), unset);
  for (EdgeId e = 0; e < c.edge_count(); ++e) {
    if (!keep_edge[e]) continue;
    const Edge& edge = g.edge(e);
    if (vnew[edge.tail] == unset || vnew[edge.head] == unset)
      throw Error(ErrorKind::internal, "bad_subcomplex", "kept edge lost an endpoint");
    enew[e] = sub.complex.add_edge(vnew[edge.tail], vnew[edge.head], edge.name, edge.label);
    sub.edges.push_back(e);
  }
  for (CellId k = 0; k < c.cell_count(); ++k) {
    if (!keep_cell[k]) continue;
    std::vector<DartId> boundary;
    for (DartId d : c.cell(k).boundary) {
      if (enew[edge_of(d)] == unset)
        throw Error(ErrorKind::internal, "bad_subcomplex", "kept cell lost an edge");
      boundary.push_back(forward_dart(enew[edge_of(d)]) | (d & 1u));
    }
    sub.complex.add_cell(std::move(boundary), c.cell(k).name);
    sub.cells.push_back(k);
  }
  if (c.base() && vnew[*c.base()] != unset) sub.complex.set_base(vnew[*c.base()]);
  return sub;
}

namespace {

// Removes free faces in increasing edge order until none remain.
void collapse_free_faces(const TwoComplex& c, std::vector<bool>& keep_edge,
                         std::vector<bool>& keep_cell) {
  const auto sides = sides_by_edge(c);
  std::vector<std::uint32_t> count(c.edge_count(), 0);
  for (EdgeId e = 0; e < c.edge_count(); ++e)
    for (const Side& s : sides[e])
      if (keep_cell[s.cell]) ++count[e];
  std::set<EdgeId> free;
  for (EdgeId e = 0; e < c.edge_count(); ++e)
    if (keep_edge[e] && count[e] == 1) free.insert(e);
  while (!free.empty()) {
    const EdgeId e = *free.begin();
    free.erase(free.begin());
    CellId cell = 0;
    for (const Side& s : sides[e])
      if (keep_cell[s.cell]) cell = s.cell;
    keep_edge[e] = false;
    keep_cell[cell] = false;
    for (DartId d : c.cell(cell).boundary) {
      const EdgeId f = edge_of(d);
      --count[f];
      if (!keep_edge[f]) continue;
      if (count[f] == 1)
        free.insert(f);
      else
        free.erase(f);
    }
  }
}

// Deletes free bridges that cut off a cell-free tree, along with that tree.
bool prune_tree_branches(const TwoComplex& c, std::vector<bool>& keep_vertex,
                         std::vector<bool>& keep_edge, const std::vector<bool>& keep_cell) {
  const Graph& g = c.skeleton();
  std::vector<std::uint32_t> count(c.edge_count(), 0);
  for (CellId k = 0; k < c.cell_count(); ++k)
    if (keep_cell[k])
      for (DartId d : c.cell(k).boundary) ++count[edge_of(d)];
  const VertexId distinguished = c.distinguished_vertex();

  for (EdgeId e = 0; e < c.edge_count(); ++e) {
    if (!keep_edge[e] || count[e] != 0) continue;
    const Edge& edge = g.edge(e);
    if (edge.tail == edge.head) continue;

    // Flood from each endpoint avoiding e.
    const auto flood = [&](VertexId start) {
      std::vector<bool> seen(c.vertex_count(), false);
      std::vector<VertexId> stack{start};
      seen[start] = true;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (DartId d : g.link(v)) {
          if (edge_of(d) == e || !keep_edge[edge_of(d)]) continue;
          const VertexId w = g.terminus(d);
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
      return seen;
    };
    const auto side_a = flood(edge.tail);
    if (side_a[edge.head]) continue;
    const auto side_b = flood(edge.head);

    const auto is_tree = [&](const std::vector<bool>& side) {
      std::int64_t vertices = 0;
      std::int64_t edges = 0;
      for (VertexId v = 0; v < c.vertex_count(); ++v) vertices += side[v];
      for (EdgeId f = 0; f < c.edge_count(); ++f)
        if (keep_edge[f] && f != e && side[g.edge(f).tail]) {
          ++edges;
          if (count[f] != 0) return false;
        }
      return edges == vertices - 1;
    };
    const auto min_vertex = [&](const std::vector<bool>& side) {
      return static_cast<VertexId>(std::find(side.begin(), side.end(), true) - side.begin());
    };

    const std::vector<bool>* drop = nullptr;
    const bool a_tree = is_tree(side_a);
    const bool b_tree = is_tree(side_b);
    if (side_a[distinguished]) {
      if (b_tree) drop = &side_b;
    } else if (side_b[distinguished]) {
      if (a_tree) drop = &side_a;
    } else if (a_tree && b_tree) {
      drop = min_vertex(side_a) < min_vertex(side_b) ? &side_b : &side_a;
    } else if (a_tree) {
      drop = &side_a;
    } else if (b_tree) {
      drop = &side_b;
    }
    if (!drop) continue;
    keep_edge[e] = false;
    for (EdgeId f = 0; f < c.edge_count(); ++f)
      if (keep_edge[f] && (*drop)[g.edge(f).tail]) keep_edge[f] = false;
    for (VertexId v = 0; v < c.vertex_count(); ++v)
      if ((*drop)[v]) keep_vertex[v] = false;
    return true;
  }
  return false;
}

}  // namespace

Subcomplex collapse_with_inclusion(const TwoComplex& c, CollapseMode mode) {
  std::vector<bool> keep_vertex(c.vertex_count(), true);
  std::vector<bool> keep_edge(c.edge_count(), true);
  std::vector<bool> keep_cell(c.cell_count(), true);
  collapse_free_faces(c, keep_edge, keep_cell);
  if (mode == CollapseMode::free_faces_and_separating_free_edges)
    while (prune_tree_branches(c, keep_vertex, keep_edge, keep_cell)) {
    }
  return induced_subcomplex(c, keep_vertex, keep_edge, keep_cell);
}

TwoComplex collapse(const TwoComplex& c, CollapseMode mode) {
  return collapse_with_inclusion(c, mode).complex;
}

CellMorphism inclusion_morphism(const Subcomplex& sub, ComplexRef ambient) {
  CellMorphism m;
  m.source = share(sub.complex);
  m.target = std::move(ambient);
  m.vertex_map = sub.vertices;
  for (EdgeId e : sub.edges) m.edge_map.push_back(forward_dart(e));
  for (CellId k : sub.cells) m.cell_map.push_back({k, {}});
  return m;
}

}  // namespace orelco
