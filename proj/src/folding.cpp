#include "orelco/folding.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

#include "orelco/error.hpp"
#include "orelco/text.hpp"

namespace orelco {

namespace {

class VertexSets {
 public:
  explicit VertexSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  VertexId find(VertexId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<VertexId> parent_;
};

// Union-find on edges where each edge remembers whether it is glued to its
// root with reversed orientation.
class EdgeSets {
 public:
  explicit EdgeSets(std::size_t n) : parent_(n), flip_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::pair<EdgeId, std::uint32_t> find(EdgeId e) {
    std::uint32_t flip = 0;
    EdgeId root = e;
    while (parent_[root] != root) {
      flip ^= flip_[root];
      root = parent_[root];
    }
    // path compression
    std::uint32_t acc = flip;
    EdgeId cur = e;
    while (parent_[cur] != cur) {
      const EdgeId next = parent_[cur];
      const std::uint32_t f = flip_[cur];
      parent_[cur] = root;
      flip_[cur] = acc;
      acc ^= f;
      cur = next;
    }
    return {root, flip};
  }
  DartId dart_root(DartId d) {
    const auto [root, flip] = find(edge_of(d));
    return forward_dart(root) | (flip ^ (d & 1u));
  }
  void unite_darts(DartId x, DartId y) {
    const DartId rx = dart_root(x);
    const DartId ry = dart_root(y);
    EdgeId ex = edge_of(rx);
    EdgeId ey = edge_of(ry);
    if (ex == ey) return;
    const std::uint32_t flip = (rx ^ ry) & 1u;
    if (ey < ex) std::swap(ex, ey);
    parent_[ey] = ex;
    flip_[ey] = flip;
  }

 private:
  std::vector<EdgeId> parent_;
  std::vector<std::uint32_t> flip_;
};

struct FoldState {
  const CellMorphism& m;
  VertexSets vertices;
  EdgeSets edges;
  std::vector<CellId> cell_rep;

  explicit FoldState(const CellMorphism& map)
      : m(map),
        vertices(map.source->vertex_count()),
        edges(map.source->edge_count()),
        cell_rep(map.source->cell_count()) {
    std::iota(cell_rep.begin(), cell_rep.end(), 0u);
  }

  void identify_darts(DartId x, DartId y) {
    const Graph& g = m.source->skeleton();
    if (m.image(x) != m.image(y))
      throw Error(ErrorKind::invalid_input, "bad_trace", "identified darts have different images");
    const DartId rx = edges.dart_root(x);
    const DartId ry = edges.dart_root(y);
    if (rx == ry) return;
    if (edge_of(rx) == edge_of(ry))
      throw Error(ErrorKind::internal, "fold_reversal", "edge glued to its own reverse");
    edges.unite_darts(x, y);
    vertices.unite(g.origin(x), g.origin(y));
    vertices.unite(g.terminus(x), g.terminus(y));
  }

  // Darts of the target boundary in target order, as source root darts.
  std::vector<DartId> normalized_path(CellId c) {
    const auto& b = m.source->cell(c).boundary;
    const auto length = static_cast<std::uint32_t>(b.size());
    const Alignment a = m.cell_map[c].alignment;
    std::vector<DartId> path(length);
    for (std::uint32_t i = 0; i < length; ++i) {
      const DartId r = edges.dart_root(b[i]);
      path[aligned_position(a, i, length)] = a.orientation == Orientation::positive ? r : reverse(r);
    }
    return path;
  }

  FoldResult build() {
    const TwoComplex& a = *m.source;
    const TwoComplex& b = *m.target;
    const Graph& ag = a.skeleton();
    const Graph& bg = b.skeleton();
    constexpr auto unset = static_cast<std::uint32_t>(-1);

    TwoComplex c;
    CellMorphism up;  // C -> B
    std::vector<VertexId> new_vertex(a.vertex_count(), unset);
    for (VertexId v = 0; v < a.vertex_count(); ++v)
      if (vertices.find(v) == v) {
        new_vertex[v] = c.add_vertex();
        up.vertex_map.push_back(m.vertex_map[v]);
      }
    std::vector<EdgeId> new_edge(a.edge_count(), unset);
    const bool target_labeled = bg.labeled();
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
      if (edges.find(e).first != e) continue;
      const Edge& edge = ag.edge(e);
      const DartId img = m.edge_map[e];
      std::string label = target_labeled ? bg.dart_label(img) : edge.label;
      new_edge[e] = c.add_edge(new_vertex[vertices.find(edge.tail)],
                               new_vertex[vertices.find(edge.head)], {}, std::move(label));
      up.edge_map.push_back(img);
    }
    const auto c_dart = [&](DartId d) {
      const DartId r = edges.dart_root(d);
      return forward_dart(new_edge[edge_of(r)]) | (r & 1u);
    };

    std::vector<CellId> new_cell(a.cell_count(), unset);
    for (CellId k = 0; k < a.cell_count(); ++k) {
      if (cell_rep[k] != k) continue;
      std::vector<DartId> boundary;
      for (DartId d : a.cell(k).boundary) boundary.push_back(c_dart(d));
      new_cell[k] = c.add_cell(std::move(boundary));
      up.cell_map.push_back(m.cell_map[k]);
    }
    if (a.base()) c.set_base(new_vertex[vertices.find(*a.base())]);

    FoldResult out;
    out.original = m;
    out.folded = share(std::move(c));
    up.source = out.folded;
    up.target = m.target;
    out.immersion = std::move(up);

    CellMorphism down;
    down.source = m.source;
    down.target = out.folded;
    for (VertexId v = 0; v < a.vertex_count(); ++v)
      down.vertex_map.push_back(new_vertex[vertices.find(v)]);
    for (EdgeId e = 0; e < a.edge_count(); ++e) down.edge_map.push_back(c_dart(forward_dart(e)));
    for (CellId k = 0; k < a.cell_count(); ++k) {
      const CellId rep = cell_rep[k];
      const auto length = static_cast<std::uint32_t>(a.cell(k).boundary.size());
      const Alignment to_rep = compose(inverse(m.cell_map[rep].alignment, length),
                                       m.cell_map[k].alignment, length);
      down.cell_map.push_back({new_cell[rep], to_rep});
    }
    out.projection = std::move(down);
    (void)b;
    return out;
  }
};

void require_morphism(const CellMorphism& m) {
  const Classification cls = classify_map(m);
  if (cls.kind == MapClass::not_morphism)
    throw Error(ErrorKind::invalid_input, "not_morphism", cls.witness);
}

void require_immersion(const FoldResult& r) {
  const Classification cls = classify_map(r.immersion);
  if (cls.kind < MapClass::immersion)
    throw Error(ErrorKind::internal, "fold_not_immersion", cls.witness);
}

}  // namespace

FoldResult fold(const CellMorphism& m, FoldOrder order) {
  require_morphism(m);
  FoldState state(m);
  const Graph& g = m.source->skeleton();
  const auto darts = static_cast<DartId>(g.dart_count());
  std::vector<FoldStep> trace;

  for (;;) {
    std::map<std::pair<VertexId, DartId>, DartId> seen;
    bool folded = false;
    for (DartId i = 0; i < darts && !folded; ++i) {
      const DartId d = order == FoldOrder::lowest_first ? i : darts - 1 - i;
      const DartId r = state.edges.dart_root(d);
      const auto key = std::make_pair(state.vertices.find(g.origin(d)), m.image(d));
      const auto [it, inserted] = seen.emplace(key, r);
      if (inserted || it->second == r) continue;
      const DartId first = std::min(it->second, r);
      const DartId second = std::max(it->second, r);
      trace.push_back({FoldStep::Kind::dart, first, second});
      state.identify_darts(first, second);
      folded = true;
    }
    if (!folded) break;
  }

  std::map<std::pair<CellId, std::vector<DartId>>, CellId> keys;
  for (CellId k = 0; k < m.source->cell_count(); ++k) {
    auto key = std::make_pair(m.cell_map[k].cell, state.normalized_path(k));
    const auto [it, inserted] = keys.emplace(std::move(key), k);
    if (!inserted) {
      state.cell_rep[k] = it->second;
      trace.push_back({FoldStep::Kind::cell, it->second, k});
    }
  }

  FoldResult out = state.build();
  out.trace = std::move(trace);
  require_immersion(out);
  return out;
}

FoldResult replay_fold(const CellMorphism& m, const std::vector<FoldStep>& trace) {
  require_morphism(m);
  FoldState state(m);
  const std::size_t darts = m.source->skeleton().dart_count();
  for (const FoldStep& step : trace) {
    if (step.kind == FoldStep::Kind::dart) {
      if (step.first >= darts || step.second >= darts)
        throw Error(ErrorKind::invalid_input, "bad_trace", "dart out of range");
      state.identify_darts(step.first, step.second);
    } else {
      if (step.first >= m.source->cell_count() || step.second >= m.source->cell_count())
        throw Error(ErrorKind::invalid_input, "bad_trace", "cell out of range");
      CellId a = state.cell_rep[step.first];
      CellId b = state.cell_rep[step.second];
      if (a == b) continue;
      if (m.cell_map[a].cell != m.cell_map[b].cell ||
          state.normalized_path(a) != state.normalized_path(b))
        throw Error(ErrorKind::invalid_input, "bad_trace", "identified cells differ");
      if (b < a) std::swap(a, b);
      for (CellId& rep : state.cell_rep)
        if (rep == b) rep = a;
    }
  }
  FoldResult out = state.build();
  out.trace = trace;
  return out;
}

std::string format_fold_trace(const std::vector<FoldStep>& trace) {
  std::ostringstream out;
  for (const FoldStep& s : trace)
    out << "identify " << (s.kind == FoldStep::Kind::dart ? "dart" : "cell") << ' ' << s.first
        << ' ' << s.second << '\n';
  return out.str();
}

std::vector<FoldStep> parse_fold_trace(std::string_view text) {
  std::vector<FoldStep> trace;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto t = split_ws(strip_comment(lines[n]));
    if (t.empty()) continue;
    if (t.size() != 4 || t[0] != "identify" || (t[1] != "dart" && t[1] != "cell"))
      parse_fail(n + 1, "expected 'identify dart|cell <i> <j>'");
    trace.push_back({t[1] == "dart" ? FoldStep::Kind::dart : FoldStep::Kind::cell,
                     static_cast<std::uint32_t>(parse_uint(t[2], "identify")),
                     static_cast<std::uint32_t>(parse_uint(t[3], "identify"))});
  }
  return trace;
}

CellMorphism factor_unique(const FoldResult& folded, const CellMorphism& through,
                           const CellMorphism& lift_of) {
  const Classification cls = classify_map(through);
  if (cls.kind < MapClass::immersion)
    throw Error(ErrorKind::precondition, "not_immersion", cls.witness);
  if (classify_map(lift_of).kind == MapClass::not_morphism)
    throw Error(ErrorKind::precondition, "not_morphism", "lift is not a morphism");
  if (!same_maps(compose(through, lift_of), folded.original))
    throw Error(ErrorKind::precondition, "not_commuting",
                "lift followed by the immersion differs from the original map");

  const TwoComplex& a = *folded.original.source;
  const TwoComplex& c = *folded.folded;
  const CellMorphism& p = folded.projection;
  constexpr auto unset = static_cast<std::uint32_t>(-1);

  CellMorphism out;
  out.source = folded.folded;
  out.target = through.source;
  out.vertex_map.assign(c.vertex_count(), unset);
  out.edge_map.assign(c.edge_count(), unset);
  out.cell_map.assign(c.cell_count(), {unset, {}});

  const auto clash = [](const std::string& what) {
    throw Error(ErrorKind::internal, "factor_clash", what);
  };
  for (VertexId v = 0; v < a.vertex_count(); ++v) {
    VertexId& slot = out.vertex_map[p.vertex_map[v]];
    const VertexId image = lift_of.vertex_map[v];
    if (slot == unset)
      slot = image;
    else if (slot != image)
      clash("vertex");
  }
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    const DartId cd = p.edge_map[e];
    // the A dart lying over the forward dart of C's edge
    const DartId ad = is_forward(cd) ? forward_dart(e) : reverse(forward_dart(e));
    DartId& slot = out.edge_map[edge_of(cd)];
    const DartId image = lift_of.image(ad);
    if (slot == unset)
      slot = image;
    else if (slot != image)
      clash("edge");
  }
  for (CellId k = 0; k < a.cell_count(); ++k) {
    const CellImage& pc = p.cell_map[k];
    const CellImage& lc = lift_of.cell_map[k];
    const auto length = static_cast<std::uint32_t>(a.cell(k).boundary.size());
    const CellImage image{lc.cell, compose(lc.alignment, inverse(pc.alignment, length), length)};
    CellImage& slot = out.cell_map[pc.cell];
    if (slot.cell == unset)
      slot = image;
    else if (slot != image)
      clash("cell");
  }
  const Classification result = classify_map(out);
  if (result.kind < MapClass::immersion)
    throw Error(ErrorKind::internal, "factor_not_immersion", result.witness);
  return out;
}

CanonicalForm canonical_form(const CellMorphism& m) {
  const TwoComplex& c = *m.source;
  const Graph& g = c.skeleton();
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  const auto labels = component_labels(g);
  const std::size_t components =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;

  std::vector<std::vector<CellId>> cells_of(components);
  for (CellId k = 0; k < c.cell_count(); ++k)
    cells_of[labels[g.origin(c.cell(k).boundary[0])]].push_back(k);
  std::vector<std::vector<EdgeId>> edges_of(components);
  for (EdgeId e = 0; e < g.edge_count(); ++e) edges_of[labels[g.edge(e).tail]].push_back(e);
  std::vector<std::vector<VertexId>> vertices_of(components);
  for (VertexId v = 0; v < g.vertex_count(); ++v) vertices_of[labels[v]].push_back(v);

  std::vector<CanonicalForm> forms;
  std::vector<std::uint32_t> order(g.vertex_count(), unset);
  for (std::size_t k = 0; k < components; ++k) {
    VertexId least = unset;
    for (VertexId v : vertices_of[k]) least = std::min(least, m.vertex_map[v]);
    CanonicalForm best;
    for (VertexId start : vertices_of[k]) {
      if (m.vertex_map[start] != least) continue;
      for (VertexId v : vertices_of[k]) order[v] = unset;
      std::vector<VertexId> queue{start};
      order[start] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        std::vector<DartId> link = g.link(queue[head]);
        std::sort(link.begin(), link.end(),
                  [&](DartId x, DartId y) { return m.image(x) < m.image(y); });
        for (DartId d : link) {
          const VertexId w = g.terminus(d);
          if (order[w] == unset) {
            order[w] = static_cast<std::uint32_t>(queue.size());
            queue.push_back(w);
          }
        }
      }
      std::vector<std::array<std::uint64_t, 3>> edge_codes;
      for (EdgeId e : edges_of[k]) {
        DartId d = forward_dart(e);
        if (!is_forward(m.image(d))) d = reverse(d);
        edge_codes.push_back({order[g.origin(d)], order[g.terminus(d)], m.image(d)});
      }
      std::sort(edge_codes.begin(), edge_codes.end());
      std::vector<std::vector<std::uint64_t>> cell_codes;
      for (CellId cell : cells_of[k]) {
        const auto& b = c.cell(cell).boundary;
        const auto length = static_cast<std::uint32_t>(b.size());
        const Alignment al = m.cell_map[cell].alignment;
        std::vector<std::uint64_t> code(length + 2);
        code[0] = m.cell_map[cell].cell;
        code[1] = length;
        for (std::uint32_t i = 0; i < length; ++i) {
          const DartId d = al.orientation == Orientation::positive ? b[i] : reverse(b[i]);
          code[2 + aligned_position(al, i, length)] = order[g.origin(d)];
        }
        cell_codes.push_back(std::move(code));
      }
      std::sort(cell_codes.begin(), cell_codes.end());
      CanonicalForm form{vertices_of[k].size(), edge_codes.size(), cell_codes.size()};
      for (const auto& e : edge_codes) form.insert(form.end(), e.begin(), e.end());
      for (const auto& cc : cell_codes) form.insert(form.end(), cc.begin(), cc.end());
      if (best.empty() || form < best) best = std::move(form);
    }
    forms.push_back(std::move(best));
  }
  std::sort(forms.begin(), forms.end());
  CanonicalForm out{forms.size()};
  for (const auto& f : forms) {
    out.push_back(f.size());
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

bool isomorphic_over_target(const CellMorphism& a, const CellMorphism& b) {
  if (a.target != b.target && !(*a.target == *b.target)) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace orelco
