#include "orelco/dehn.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>

#include "orelco/error.hpp"

namespace orelco {

namespace {

struct Relators {
  Word positive;  // w^n
  Word negative;  // w^-n

  const Word& pick(int sign) const { return sign > 0 ? positive : negative; }
};

Relators relators_of(const OneRelatorOrbicomplex& x) {
  if (!is_rose(x.gamma))
    throw Error(ErrorKind::precondition, "not_a_rose", "the word problem is solved over a rose");
  if (x.branch < 2)
    throw Error(ErrorKind::precondition, "torsion_free",
                "Dehn's algorithm needs branch index n >= 2");
  Relators r;
  r.positive = power(relator_word(x), x.branch);
  r.negative = inverse(r.positive);
  return r;
}

// Factor of the cyclic word s of the given length starting at `from`.
Word cyclic_factor(const Word& s, std::size_t from, std::size_t length) {
  Word out;
  out.reserve(length);
  for (std::size_t t = 0; t < length; ++t) out.push_back(s[(from + t) % s.size()]);
  return out;
}

std::optional<DehnStep> find_step(const Word& u, const Relators& r, std::size_t threshold) {
  const std::size_t n = r.positive.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    DehnStep best;
    for (std::size_t rho = 0; rho < n; ++rho)
      for (int sign : {1, -1}) {
        const Word& s = r.pick(sign);
        std::size_t l = 0;
        while (l < n && i + l < u.size() && u[i + l] == s[(rho + l) % n]) ++l;
        if (l > best.length) best = {i, l, rho, sign};
      }
    if (best.length >= threshold) return best;
  }
  return std::nullopt;
}

Word apply_step(const Word& u, const DehnStep& step, const Relators& r) {
  const Word& s = r.pick(step.sign);
  const std::size_t n = s.size();
  const Word replacement =
      inverse(cyclic_factor(s, step.rotation + step.length, n - step.length));
  Word v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(step.position));
  v.insert(v.end(), replacement.begin(), replacement.end());
  v.insert(v.end(), u.begin() + static_cast<std::ptrdiff_t>(step.position + step.length), u.end());
  return free_reduce(v);
}

}  // namespace

DehnResult dehn_solve(const Word& u, const OneRelatorOrbicomplex& x, DehnThreshold threshold) {
  const Relators r = relators_of(x);
  const std::size_t n = r.positive.size();
  const std::size_t min_length = threshold == DehnThreshold::half
                                     ? n / 2 + 1
                                     : (x.branch - 1) * x.relator_length() + 1;
  DehnResult out;
  out.input = free_reduce(u);
  Word current = out.input;
  while (!current.empty()) {
    const auto step = find_step(current, r, min_length);
    if (!step) break;
    const Word next = apply_step(current, *step, r);
    if (next.size() >= current.size())
      throw Error(ErrorKind::internal, "dehn_not_shortening", "replacement did not shorten");
    out.trace.push_back(*step);
    current = next;
  }
  out.trivial = current.empty();
  out.remnant = std::move(current);
  return out;
}

std::string format_dehn_trace(const std::vector<DehnStep>& trace) {
  std::ostringstream out;
  for (const DehnStep& s : trace)
    out << "replace position=" << s.position << " length=" << s.length
        << " rotation=" << s.rotation << " sign=" << (s.sign > 0 ? '+' : '-') << '\n';
  return out.str();
}

Word read_path(const TwoComplex& c, const std::vector<DartId>& path, const Alphabet& alphabet) {
  Word u;
  for (DartId d : path) {
    const std::string& label = c.skeleton().edge(edge_of(d)).label;
    const Letter x = alphabet.letter(label);
    u.push_back(is_forward(d) ? x : -x);
  }
  return u;
}

namespace {

// Mutable diagram under construction. Edges are oriented so that the forward
// dart reads a positive letter.
struct Draft {
  std::uint32_t vertices = 1;
  std::vector<std::array<VertexId, 2>> ends;
  std::vector<Letter> letters;
  std::vector<std::vector<DartId>> cells;
  std::vector<Alignment> alignment;
  std::vector<DartId> boundary;

  VertexId origin(DartId d) const { return ends[edge_of(d)][d & 1u]; }
  VertexId terminus(DartId d) const { return ends[edge_of(d)][(d & 1u) ^ 1u]; }

  VertexId add_vertex() { return vertices++; }

  DartId add_dart(VertexId from, VertexId to, Letter x) {
    const auto e = static_cast<EdgeId>(ends.size());
    if (x > 0) {
      ends.push_back({from, to});
      letters.push_back(x);
      return forward_dart(e);
    }
    ends.push_back({to, from});
    letters.push_back(-x);
    return reverse(forward_dart(e));
  }
};

// Positions (i, j) with i < j that free reduction cancels against each other.
std::vector<std::size_t> cancellation_partners(const Word& v) {
  constexpr auto none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> partner(v.size(), none);
  std::vector<std::size_t> stack;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (!stack.empty() && v[stack.back()] == -v[t]) {
      partner[t] = stack.back();
      partner[stack.back()] = t;
      stack.pop_back();
    } else {
      stack.push_back(t);
    }
  }
  return partner;
}

void glue_step(Draft& d, const Word& before, const DehnStep& step, const Relators& r) {
  constexpr auto none = static_cast<std::size_t>(-1);
  const Word& s = r.pick(step.sign);
  const std::size_t n = s.size();
  const Word complement_inverse =
      inverse(cyclic_factor(s, step.rotation + step.length, n - step.length));
  Word v(before.begin(), before.begin() + static_cast<std::ptrdiff_t>(step.position));
  v.insert(v.end(), complement_inverse.begin(), complement_inverse.end());
  v.insert(v.end(),
           before.begin() + static_cast<std::ptrdiff_t>(step.position + step.length),
           before.end());

  const auto partner = cancellation_partners(v);
  std::vector<DartId> gamma;
  std::vector<DartId> spur(v.size(), 0);
  VertexId cur = 0;
  std::size_t survivor = 0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    DartId dart = 0;
    if (partner[t] == none) {
      if (survivor >= d.boundary.size())
        throw Error(ErrorKind::internal, "diagram_replay", "boundary shorter than reduced word");
      dart = d.boundary[survivor++];
      if (d.origin(dart) != cur)
        throw Error(ErrorKind::internal, "diagram_replay", "boundary path broken");
    } else if (partner[t] > t) {
      dart = d.add_dart(cur, d.add_vertex(), v[t]);
      spur[t] = dart;
    } else {
      dart = reverse(spur[partner[t]]);
    }
    gamma.push_back(dart);
    cur = d.terminus(dart);
  }
  if (survivor != d.boundary.size() || cur != 0)
    throw Error(ErrorKind::internal, "diagram_replay", "boundary mismatch");

  const std::size_t i = step.position;
  const std::size_t k = complement_inverse.size();
  const VertexId p = i == 0 ? 0 : d.terminus(gamma[i - 1]);
  const VertexId q = i + k == 0 ? 0 : d.terminus(gamma[i + k - 1]);

  std::vector<DartId> piece;
  VertexId at = p;
  for (std::size_t t = 0; t < step.length; ++t) {
    const VertexId to = t + 1 == step.length ? q : d.add_vertex();
    piece.push_back(d.add_dart(at, to, s[(step.rotation + t) % n]));
    at = to;
  }
  std::vector<DartId> cell = piece;
  for (std::size_t t = k; t-- > 0;) cell.push_back(reverse(gamma[i + t]));
  d.cells.push_back(std::move(cell));
  d.alignment.push_back({static_cast<std::uint32_t>(step.rotation),
                         step.sign > 0 ? Orientation::positive : Orientation::negative});

  std::vector<DartId> next(gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(i));
  next.insert(next.end(), piece.begin(), piece.end());
  next.insert(next.end(), gamma.begin() + static_cast<std::ptrdiff_t>(i + k), gamma.end());
  d.boundary = std::move(next);
}

struct DraftSide {
  std::uint32_t cell;
  std::uint32_t position;
};

std::vector<std::vector<DraftSide>> draft_sides(const Draft& d) {
  std::vector<std::vector<DraftSide>> sides(d.ends.size());
  for (std::uint32_t c = 0; c < d.cells.size(); ++c)
    for (std::uint32_t p = 0; p < d.cells[c].size(); ++p)
      sides[edge_of(d.cells[c][p])].push_back({c, p});
  return sides;
}

std::uint32_t draft_disc_side(const Draft& d, std::uint32_t c, std::uint32_t p,
                              std::uint32_t relator_length) {
  const auto length = static_cast<std::uint32_t>(d.cells[c].size());
  return aligned_position(d.alignment[c], p, length) % relator_length;
}

// Cell boundary reordered to read w^n from position 0.
std::vector<DartId> relator_order(const Draft& d, std::uint32_t c) {
  const auto& b = d.cells[c];
  const auto length = static_cast<std::uint32_t>(b.size());
  std::vector<DartId> out(length);
  const Alignment a = d.alignment[c];
  for (std::uint32_t i = 0; i < length; ++i)
    out[aligned_position(a, i, length)] = a.orientation == Orientation::positive ? b[i] : reverse(b[i]);
  return out;
}

class Sets {
 public:
  explicit Sets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Returns false when no mirror pair remains.
bool cancel_one_mirror(Draft& d, std::uint32_t relator_length) {
  const auto sides = draft_sides(d);
  std::vector<bool> on_boundary(d.ends.size(), false);
  for (DartId x : d.boundary) on_boundary[edge_of(x)] = true;

  for (EdgeId e = 0; e < sides.size(); ++e) {
    const auto& list = sides[e];
    std::optional<std::pair<DraftSide, DraftSide>> pair;
    for (std::size_t a = 0; a < list.size() && !pair; ++a)
      for (std::size_t b = a + 1; b < list.size() && !pair; ++b)
        if (draft_disc_side(d, list[a].cell, list[a].position, relator_length) ==
            draft_disc_side(d, list[b].cell, list[b].position, relator_length))
          pair.emplace(list[a], list[b]);
    if (!pair) continue;
    const auto [sa, sb] = *pair;
    if (list.size() != 2 || sa.cell == sb.cell || on_boundary[e])
      throw Error(ErrorKind::invariant_breach, "non_cancellable_mirror",
                  "edge " + std::to_string(e) + " with " + std::to_string(list.size()) +
                      " sides");

    const auto ra = relator_order(d, sa.cell);
    const auto rb = relator_order(d, sb.cell);
    const auto length = static_cast<std::uint32_t>(ra.size());
    const std::uint32_t pa = aligned_position(d.alignment[sa.cell], sa.position, length);
    const std::uint32_t pb = aligned_position(d.alignment[sb.cell], sb.position, length);
    if (ra[pa] != rb[pb])
      throw Error(ErrorKind::internal, "mirror_mismatch", "mirror sides disagree");

    Sets vertex_sets(d.vertices);
    Sets edge_sets(d.ends.size());
    for (std::uint32_t t = 1; t < length; ++t) {
      const DartId x = ra[(pa + t) % length];
      const DartId y = rb[(pb + t) % length];
      if ((x & 1u) != (y & 1u))
        throw Error(ErrorKind::internal, "mirror_mismatch", "orientation clash");
      edge_sets.unite(edge_of(x), edge_of(y));
      vertex_sets.unite(d.origin(x), d.origin(y));
      vertex_sets.unite(d.terminus(x), d.terminus(y));
    }

    Draft next;
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<VertexId> vmap(d.vertices, unset);
    std::vector<VertexId> vnew(d.vertices, unset);
    next.vertices = 0;
    for (VertexId v = 0; v < d.vertices; ++v)
      if (vertex_sets.find(v) == v) vnew[v] = next.vertices++;
    for (VertexId v = 0; v < d.vertices; ++v) vmap[v] = vnew[vertex_sets.find(v)];
    if (vmap[0] != 0) throw Error(ErrorKind::internal, "mirror_base", "base vertex renumbered");
    std::vector<EdgeId> enew(d.ends.size(), unset);
    for (EdgeId f = 0; f < d.ends.size(); ++f) {
      if (f == e || edge_sets.find(f) != f) continue;
      enew[f] = static_cast<EdgeId>(next.ends.size());
      next.ends.push_back({vmap[d.ends[f][0]], vmap[d.ends[f][1]]});
      next.letters.push_back(d.letters[f]);
    }
    const auto map_dart = [&](DartId x) {
      const EdgeId f = enew[edge_sets.find(edge_of(x))];
      if (f == unset) throw Error(ErrorKind::internal, "mirror_edge", "deleted edge still used");
      return forward_dart(f) | (x & 1u);
    };
    for (std::uint32_t c = 0; c < d.cells.size(); ++c) {
      if (c == sa.cell || c == sb.cell) continue;
      std::vector<DartId> b;
      for (DartId x : d.cells[c]) b.push_back(map_dart(x));
      next.cells.push_back(std::move(b));
      next.alignment.push_back(d.alignment[c]);
    }
    for (DartId x : d.boundary) next.boundary.push_back(map_dart(x));
    d = std::move(next);
    return true;
  }
  return false;
}

// Drops edges meeting no cell and off the boundary, then stray vertices.
void prune(Draft& d) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<bool> keep(d.ends.size(), false);
  for (const auto& c : d.cells)
    for (DartId x : c) keep[edge_of(x)] = true;
  for (DartId x : d.boundary) keep[edge_of(x)] = true;
  std::vector<bool> used(d.vertices, false);
  used[0] = true;
  for (EdgeId f = 0; f < d.ends.size(); ++f)
    if (keep[f]) used[d.ends[f][0]] = used[d.ends[f][1]] = true;
  Draft next;
  next.vertices = 0;
  std::vector<VertexId> vnew(d.vertices, unset);
  for (VertexId v = 0; v < d.vertices; ++v)
    if (used[v]) vnew[v] = next.vertices++;
  std::vector<EdgeId> enew(d.ends.size(), unset);
  for (EdgeId f = 0; f < d.ends.size(); ++f) {
    if (!keep[f]) continue;
    enew[f] = static_cast<EdgeId>(next.ends.size());
    next.ends.push_back({vnew[d.ends[f][0]], vnew[d.ends[f][1]]});
    next.letters.push_back(d.letters[f]);
  }
  const auto map_dart = [&](DartId x) { return forward_dart(enew[edge_of(x)]) | (x & 1u); };
  for (std::size_t c = 0; c < d.cells.size(); ++c) {
    std::vector<DartId> b;
    for (DartId x : d.cells[c]) b.push_back(map_dart(x));
    next.cells.push_back(std::move(b));
    next.alignment.push_back(d.alignment[c]);
  }
  for (DartId x : d.boundary) next.boundary.push_back(map_dart(x));
  d = std::move(next);
}

}  // namespace

std::vector<EdgeId> mirror_edges(const VanKampenDiagram& d) {
  std::vector<EdgeId> out;
  const auto sides = sides_by_edge(d.diagram);
  for (EdgeId e = 0; e < sides.size(); ++e) {
    std::vector<std::uint32_t> images;
    for (const Side& s : sides[e]) images.push_back(disc_side(d.labeling, s.cell, s.position));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) out.push_back(e);
  }
  return out;
}

VanKampenDiagram build_reduced_diagram(const Word& u, OrbicomplexRef x) {
  const Relators r = relators_of(*x);
  const DehnResult solved = dehn_solve(u, *x);
  if (!solved.trivial)
    throw Error(ErrorKind::precondition, "nontrivial_word", "word is not trivial in the group");

  std::vector<Word> words{solved.input};
  for (const DehnStep& step : solved.trace) words.push_back(apply_step(words.back(), step, r));

  Draft draft;
  for (std::size_t k = solved.trace.size(); k-- > 0;) glue_step(draft, words[k], solved.trace[k], r);
  while (cancel_one_mirror(draft, x->relator_length())) {
  }
  prune(draft);

  const Alphabet alphabet = rose_alphabet(x->gamma);
  VanKampenDiagram out;
  TwoComplex& c = out.diagram;
  for (VertexId v = 0; v < draft.vertices; ++v) c.add_vertex();
  for (EdgeId f = 0; f < draft.ends.size(); ++f)
    c.add_edge(draft.ends[f][0], draft.ends[f][1], {}, alphabet.name(generator_of(draft.letters[f])));
  for (const auto& b : draft.cells) c.add_cell(b);
  c.set_base(0);
  out.boundary_path = draft.boundary;
  out.boundary_word = read_path(c, out.boundary_path, alphabet);

  auto shared = share(out.diagram);
  OrbiMorphism labeling;
  labeling.source = shared;
  labeling.target = x;
  labeling.vertex_map.assign(c.vertex_count(), 0);
  for (EdgeId f = 0; f < draft.ends.size(); ++f)
    labeling.edge_map.push_back(letter_dart(draft.letters[f]));
  labeling.cell_alignment = draft.alignment;
  out.labeling = std::move(labeling);

  if (out.boundary_word != solved.input)
    throw Error(ErrorKind::internal, "diagram_boundary", "boundary does not spell the word");
  if (check_orbi_immersion(out.labeling).kind == MapClass::not_morphism)
    throw Error(ErrorKind::internal, "diagram_labeling", "cells do not spell w^n");
  if (component_count(c.skeleton()) != 1 || euler_characteristic(c, 2) != 1)
    throw Error(ErrorKind::invariant_breach, "diagram_not_disk",
                "diagram has Euler characteristic " + std::to_string(euler_characteristic(c, 2)));
  out.reduced = mirror_edges(out).empty();
  if (!out.reduced)
    throw Error(ErrorKind::internal, "diagram_not_reduced", "mirror pair survived cancellation");
  return out;
}

}  // namespace orelco
