#include "orelco/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "orelco/error.hpp"
#include "orelco/text.hpp"

namespace orelco {

namespace {

Letter cover_letter(const FiniteQuotient& q, DartId d) {
  const auto g = static_cast<std::uint32_t>(edge_of(d) / q.degree);
  return letter_of(g, !is_forward(d));
}

DartId cover_dart(const FiniteQuotient& q, std::uint32_t point, Letter x) {
  const std::uint32_t g = generator_of(x);
  if (x > 0) return forward_dart(generator_edge(q, g, point));
  return reverse(forward_dart(generator_edge(q, g, act(q, point, x))));
}

bool lex_less(const std::vector<DartId>& a, std::size_t ra, bool ia,
              const std::vector<DartId>& b) {
  // compares rotation ra of a (inverted when ia) against b
  const std::size_t len = a.size();
  for (std::size_t i = 0; i < len; ++i) {
    const DartId x = ia ? reverse(a[(ra + len - i) % len]) : a[(ra + i) % len];
    if (x != b[i]) return x < b[i];
  }
  return false;
}

bool is_canonical_loop(const std::vector<DartId>& loop) {
  const std::size_t len = loop.size();
  for (std::size_t r = 0; r < len; ++r) {
    if (r != 0 && lex_less(loop, r, false, loop)) return false;
    if (lex_less(loop, r, true, loop)) return false;
  }
  return true;
}

std::vector<std::vector<DartId>> enumerate_loops(const Graph& g, std::size_t max_length,
                                                 std::size_t limit, bool& truncated) {
  std::vector<std::vector<DartId>> out;
  std::vector<DartId> path;
  truncated = false;
  for (DartId s = 0; s < g.dart_count() && !truncated; ++s) {
    if (reverse(s) < s) {
      // an inverted loop through s also uses the smaller dart reverse(s)
      continue;
    }
    const VertexId home = g.origin(s);
    path.assign(1, s);
    // iterative DFS with an explicit cursor per depth
    std::vector<std::size_t> next{0};
    auto try_close = [&] {
      if (g.terminus(path.back()) == home && path.back() != reverse(s) &&
          is_canonical_loop(path)) {
        out.push_back(path);
        if (out.size() >= limit) truncated = true;
      }
    };
    try_close();
    while (!path.empty() && !truncated) {
      if (path.size() >= max_length) {
        path.pop_back();
        next.pop_back();
        continue;
      }
      const std::vector<DartId>& link = g.link(g.terminus(path.back()));
      std::size_t& k = next.back();
      bool pushed = false;
      while (k < link.size()) {
        const DartId d = link[k++];
        if (d < s || reverse(d) < s || d == reverse(path.back())) continue;
        path.push_back(d);
        next.push_back(0);
        try_close();
        pushed = true;
        break;
      }
      if (!pushed) {
        path.pop_back();
        next.pop_back();
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::int64_t free_edge_count(const TwoComplex& c) {
  return static_cast<std::int64_t>(find_free_faces_and_edges(c).free_edges.size());
}

bool bijective(const CellMorphism& m) {
  const TwoComplex& a = *m.source;
  const TwoComplex& b = *m.target;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
      a.cell_count() != b.cell_count())
    return false;
  std::vector<bool> seen(b.vertex_count(), false);
  for (VertexId v : m.vertex_map) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  seen.assign(b.edge_count(), false);
  for (DartId d : m.edge_map) {
    if (seen[edge_of(d)]) return false;
    seen[edge_of(d)] = true;
  }
  seen.assign(b.cell_count(), false);
  for (const CellImage& ci : m.cell_map) {
    if (seen[ci.cell]) return false;
    seen[ci.cell] = true;
  }
  return true;
}

[[noreturn]] void breach(const PipelineState& s, const std::string& reason,
                         const std::string& detail) {
  throw Error(ErrorKind::invariant_breach, reason,
              "stage " + std::to_string(s.stage) + " cursor " + std::to_string(s.cursor) +
                  ": " + detail + "\n" + format_stage_table(s.history));
}

StageRecord record(const PipelineState& s, std::int64_t core_cells) {
  const TwoComplex& y = s.current();
  StageRecord r;
  r.stage = s.stage;
  r.chi1 = euler_characteristic(y, 1);
  r.chi2 = euler_characteristic(y, 2);
  r.cells = static_cast<std::int64_t>(y.cell_count());
  r.free_edges = free_edge_count(y);
  r.core_cells = core_cells;
  r.cursor = s.cursor;
  r.stable_for = s.stable_for;
  return r;
}

// Lifts a diagram over X to X0 with its base at `start`, and returns Y_i with
// the diagram wedged on at `at` together with the map to X0.
CellMorphism glue_diagram(const PipelineState& s, const VanKampenDiagram& e, VertexId at,
                          std::uint32_t start) {
  const UnwrappedCover& cov = *s.cover;
  const FiniteQuotient& q = cov.quotient;
  const TwoComplex& x0 = *cov.cover;
  const TwoComplex& d = e.diagram;
  const Graph& dg = d.skeleton();

  std::vector<std::int64_t> point(dg.vertex_count(), -1);
  const VertexId root = d.distinguished_vertex();
  point[root] = start;
  std::deque<VertexId> queue{root};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (DartId a : dg.link(v)) {
      const Letter x = dart_letter(e.labeling.image(a));
      const auto p = static_cast<std::uint32_t>(point[v]);
      const std::uint32_t t = x0.skeleton().terminus(cover_dart(q, p, x));
      const VertexId u = dg.terminus(a);
      if (point[u] < 0) {
        point[u] = t;
        queue.push_back(u);
      } else if (point[u] != t) {
        breach(s, "diagram_lift", "diagram does not lift to the cover");
      }
    }
  }

  const TwoComplex& y = s.current();
  TwoComplex z;
  for (VertexId v = 0; v < y.vertex_count(); ++v) z.add_vertex(y.skeleton().vertex_name(v));
  for (const Edge& ed : y.skeleton().edges()) z.add_edge(ed.tail, ed.head, ed.name, ed.label);
  for (const Cell& c : y.cells()) z.add_cell(c.boundary, c.name);
  z.set_base(y.base());

  std::vector<VertexId> vmap(dg.vertex_count());
  for (VertexId v = 0; v < dg.vertex_count(); ++v)
    vmap[v] = v == root ? at : z.add_vertex();
  const auto edge_shift = static_cast<EdgeId>(y.edge_count());
  for (const Edge& ed : dg.edges()) z.add_edge(vmap[ed.tail], vmap[ed.head], {}, ed.label);
  auto shift = [&](DartId a) { return a + 2 * edge_shift; };

  CellMorphism m;
  m.target = cov.cover;
  m.vertex_map = s.current_map.vertex_map;
  for (VertexId v = 0; v < dg.vertex_count(); ++v)
    if (v != root) m.vertex_map.push_back(static_cast<VertexId>(point[v]));
  m.edge_map = s.current_map.edge_map;
  for (EdgeId ed = 0; ed < dg.edge_count(); ++ed) {
    const DartId a = forward_dart(ed);
    m.edge_map.push_back(cover_dart(q, static_cast<std::uint32_t>(point[dg.origin(a)]),
                                    dart_letter(e.labeling.image(a))));
  }
  m.cell_map = s.current_map.cell_map;

  const std::uint32_t len = cov.base->cell_length();
  for (CellId c = 0; c < d.cell_count(); ++c) {
    const std::vector<DartId>& bd = d.cell(c).boundary;
    std::vector<DartId> lifted;
    std::vector<DartId> glued;
    for (DartId a : bd) {
      const DartId up = cover_dart(q, static_cast<std::uint32_t>(point[dg.origin(a)]),
                                   dart_letter(e.labeling.image(a)));
      lifted.push_back(up);
      glued.push_back(shift(a));
    }
    std::optional<CellImage> found;
    for (const CoverFamily& f : cov.families) {
      const std::vector<DartId>& target = x0.cell(f.cell).boundary;
      for (Orientation o : {Orientation::positive, Orientation::negative}) {
        for (std::uint32_t off = 0; off < len && !found; ++off) {
          const Alignment al{off, o};
          bool ok = true;
          for (std::uint32_t i = 0; i < len && ok; ++i)
            ok = aligned_dart(target, al, i) == lifted[i];
          if (ok) found = CellImage{f.cell, al};
        }
      }
      if (found) break;
    }
    if (!found) breach(s, "diagram_lift", "diagram cell lifts to no cell of the cover");
    z.add_cell(std::move(glued));
    m.cell_map.push_back(*found);
  }
  m.source = share(std::move(z));
  return m;
}

void hard_checks(PipelineState& s, const CellMorphism& previous_map,
                 const CellMorphism& chain_map, const FoldResult& folded) {
  const Classification cls = classify_map(folded.immersion);
  if (cls.kind < MapClass::immersion) breach(s, "not_immersion", cls.witness);
  if (!same_maps(compose(folded.immersion, chain_map), previous_map))
    breach(s, "chain_not_commuting", "chain map does not commute over the cover");

  const FoldResult trivial_fold = fold(previous_map);
  const CellMorphism factored = factor_unique(trivial_fold, folded.immersion, chain_map);
  if (!same_maps(compose(factored, trivial_fold.projection), chain_map))
    breach(s, "factor_mismatch", "unique factorization differs from the chain map");

  const TwoComplex& prev = *previous_map.source;
  const TwoComplex& next = *folded.folded;
  if (next.cell_count() < prev.cell_count())
    breach(s, "cells_decreased", std::to_string(prev.cell_count()) + " -> " +
                                     std::to_string(next.cell_count()));
  const std::int64_t free_prev = free_edge_count(prev);
  const std::int64_t free_next = free_edge_count(next);
  if (free_next > free_prev || free_next > s.seed_free_edges)
    breach(s, "free_edges_grew", std::to_string(free_prev) + " -> " + std::to_string(free_next));
}

std::int64_t core_checks(PipelineState& s) {
  const Subcomplex core = collapse_with_inclusion(s.current());
  const auto cells = static_cast<std::int64_t>(core.complex.cell_count());
  if (cells > s.cell_bound)
    breach(s, "cell_bound",
           std::to_string(cells) + " cells in the core, bound " + std::to_string(s.cell_bound));
  const CellMorphism into = compose(s.current_map, inclusion_morphism(core, s.current_map.source));
  const TwoComplex& c = *into.source;
  if (component_count(c.skeleton()) == 1 && rank_witness(c) > 0) {
    const WcyclesReport r = wcycles_audit(over_orbicomplex(into, *s.cover), AuditMode::strict);
    if (!r.pass) breach(s, "wcycles_violation", wcycles_csv_row("core", r));
  }
  return cells;
}

}  // namespace

OrbiMorphism over_orbicomplex(const CellMorphism& into_cover, const UnwrappedCover& cover) {
  OrbiMorphism m;
  m.source = into_cover.source;
  m.target = cover.base;
  const std::uint32_t len = cover.base->cell_length();
  for (VertexId v : into_cover.vertex_map) m.vertex_map.push_back(cover.covering.vertex_map[v]);
  for (DartId d : into_cover.edge_map) m.edge_map.push_back(cover.covering.image(d));
  for (const CellImage& ci : into_cover.cell_map)
    m.cell_alignment.push_back(compose(cover.covering.cell_alignment[ci.cell], ci.alignment, len));
  return m;
}

PipelineState seed_immersion(const std::vector<Word>& generators,
                             std::shared_ptr<const UnwrappedCover> cover,
                             const PipelineBudget& budget) {
  const FiniteQuotient& q = cover->quotient;
  const Alphabet alphabet = rose_alphabet(cover->base->gamma);
  bool any = false;
  for (const Word& h : generators) any = any || !free_reduce(h).empty();
  if (!any)
    throw Error(ErrorKind::precondition, "empty_generators", "the trivial subgroup has no seed");
  TwoComplex wedge;
  wedge.add_vertex("base");
  wedge.set_base(0);
  CellMorphism m;
  m.target = cover->cover;
  m.vertex_map.push_back(0);
  for (const Word& raw : generators) {
    const Word h = free_reduce(raw);
    if (h.empty()) continue;
    if (act(q, 0, h) != 0)
      throw Error(ErrorKind::precondition, "not_in_kernel", format_word(h, alphabet));
    VertexId cur = 0;
    std::uint32_t point = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const std::uint32_t next_point = act(q, point, h[i]);
      VertexId nxt = 0;
      if (i + 1 < h.size()) {
        nxt = wedge.add_vertex();
        m.vertex_map.push_back(next_point);
      }
      const DartId up = cover_dart(q, point, h[i]);
      const std::string& label = alphabet.name(generator_of(h[i]));
      if (h[i] > 0)
        wedge.add_edge(cur, nxt, {}, label);
      else
        wedge.add_edge(nxt, cur, {}, label);
      m.edge_map.push_back(h[i] > 0 ? up : reverse(up));
      cur = nxt;
      point = next_point;
    }
  }
  m.source = share(std::move(wedge));
  const FoldResult folded = fold(m);

  PipelineState s;
  s.cover = std::move(cover);
  for (const Word& h : generators)
    if (!free_reduce(h).empty()) s.generators.push_back(free_reduce(h));
  s.seed_map = folded.immersion;
  s.current_map = folded.immersion;
  s.seed_to_current = identity_morphism(folded.folded);
  s.current_form = canonical_form(s.current_map);
  s.seed_free_edges = free_edge_count(*folded.folded);
  const auto g = static_cast<std::int64_t>(s.generators.size());
  const std::int64_t n = s.cover->base->branch;
  s.cell_bound = n > 1 ? std::max<std::int64_t>(g - 1, 0) / (n - 1) : 0;

  bool truncated = false;
  for (std::vector<DartId>& loop :
       enumerate_loops(folded.folded->skeleton(), budget.max_word_length,
                       budget.max_candidates, truncated)) {
    Candidate c;
    for (DartId d : loop) c.word.push_back(cover_letter(q, s.seed_map.image(d)));
    c.loop = std::move(loop);
    c.trivial = dehn_solve(c.word, *s.cover->base).trivial;
    s.candidates.push_back(std::move(c));
  }
  s.candidates_truncated = truncated;
  s.history.push_back(record(s, core_checks(s)));
  return s;
}

StepOutcome refine_step(PipelineState& s) {
  if (s.cursor >= s.candidates.size())
    throw Error(ErrorKind::precondition, "sweep_finished", "no candidate at the cursor");
  Candidate& c = s.candidates[s.cursor];
  ++s.steps;
  if (!c.trivial) {
    ++s.cursor;
    ++s.stable_for;
    return StepOutcome::nontrivial;
  }
  if (!c.diagram)
    c.diagram = std::make_shared<const VanKampenDiagram>(build_reduced_diagram(c.word, s.cover->base));

  const VertexId at = s.current().skeleton().origin(s.seed_to_current.image(c.loop.front()));
  const CellMorphism glued = glue_diagram(s, *c.diagram, at, s.current_map.vertex_map[at]);
  const FoldResult folded = fold(glued);
  CanonicalForm form = canonical_form(folded.immersion);
  if (form == s.current_form) {
    ++s.cursor;
    ++s.stable_for;
    return StepOutcome::unchanged;
  }

  const TwoComplex& prev = s.current();
  CellMorphism chain;
  chain.source = s.current_map.source;
  chain.target = folded.folded;
  chain.vertex_map.assign(folded.projection.vertex_map.begin(),
                          folded.projection.vertex_map.begin() + prev.vertex_count());
  chain.edge_map.assign(folded.projection.edge_map.begin(),
                        folded.projection.edge_map.begin() + prev.edge_count());
  chain.cell_map.assign(folded.projection.cell_map.begin(),
                        folded.projection.cell_map.begin() + prev.cell_count());

  hard_checks(s, s.current_map, chain, folded);
  if (bijective(chain)) breach(s, "form_mismatch", "isomorphic stages with different forms");

  s.seed_to_current = compose(chain, s.seed_to_current);
  s.current_map = folded.immersion;
  s.current_form = std::move(form);
  s.chain.push_back(std::move(chain));
  ++s.stage;
  s.stable_for = 0;
  s.changed_in_sweep = true;
  ++s.cursor;
  const std::int64_t core_cells = core_checks(s);
  s.history.push_back(record(s, core_cells));
  return StepOutcome::extended;
}

std::optional<std::vector<DartId>> trace_word(const CellMorphism& immersion,
                                              const UnwrappedCover& cover, const Word& u) {
  const TwoComplex& y = *immersion.source;
  const VertexId base = y.distinguished_vertex();
  VertexId v = base;
  std::vector<DartId> path;
  for (Letter x : u) {
    const DartId want = cover_dart(cover.quotient, immersion.vertex_map[v], x);
    std::optional<DartId> step;
    for (DartId d : y.skeleton().link(v))
      if (immersion.image(d) == want) {
        step = d;
        break;
      }
    if (!step) return std::nullopt;
    path.push_back(*step);
    v = y.skeleton().terminus(*step);
  }
  if (v != base) return std::nullopt;
  return path;
}

PipelineResult extract_presentation(const PipelineState& s) {
  PipelineResult out;
  const TwoComplex& y = s.current();
  const Graph& g = y.skeleton();
  const FiniteQuotient& q = s.cover->quotient;
  const VertexId base = y.distinguished_vertex();

  std::vector<bool> reached(g.vertex_count(), false);
  std::vector<bool> tree(g.edge_count(), false);
  std::vector<Word> to(g.vertex_count());
  std::deque<VertexId> queue{base};
  reached[base] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (DartId d : g.link(v)) {
      const VertexId u = g.terminus(d);
      if (reached[u]) continue;
      reached[u] = true;
      tree[edge_of(d)] = true;
      to[u] = to[v];
      to[u].push_back(cover_letter(q, s.current_map.image(d)));
      queue.push_back(u);
    }
  }

  std::vector<std::int64_t> index(g.edge_count(), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (tree[e] || !reached[g.edge(e).tail]) continue;
    index[e] = static_cast<std::int64_t>(out.presentation.generators.size());
    out.presentation.generators.push_back("x" +
                                          std::to_string(out.presentation.generators.size() + 1));
    Word image = to[g.edge(e).tail];
    image.push_back(cover_letter(q, s.current_map.edge_map[e]));
    image = concat(image, inverse(to[g.edge(e).head]));
    out.generator_images.push_back(free_reduce(image));
  }

  auto rewrite = [&](const std::vector<DartId>& path, bool cyclic) {
    Word u;
    for (DartId d : path)
      if (index[edge_of(d)] >= 0)
        u.push_back(letter_of(static_cast<std::uint32_t>(index[edge_of(d)]), !is_forward(d)));
    return free_reduce(u, cyclic);
  };
  auto substitute = [&](const Word& u) {
    Word img;
    for (Letter x : u) {
      const Word& part = out.generator_images[generator_of(x)];
      img = concat(img, x > 0 ? part : inverse(part));
    }
    return free_reduce(img);
  };

  for (const Cell& c : y.cells()) {
    const Word r = rewrite(c.boundary, true);
    if (!dehn_solve(substitute(r), *s.cover->base).trivial)
      breach(s, "relator_not_trivial", "cell " + c.name);
    out.presentation.relators.push_back(r);
  }
  for (const Word& h : s.generators) {
    const auto path = trace_word(s.current_map, *s.cover, h);
    if (!path) breach(s, "generator_not_traced", "a generator does not read a closed loop");
    if (substitute(rewrite(*path, false)) != free_reduce(h))
      breach(s, "generator_not_traced", "traced loop differs from the generator");
  }

  out.stage = s.stage;
  out.sweeps = s.sweeps;
  out.steps = s.steps;
  out.candidate_count = s.candidates.size();
  out.history = s.history;
  out.cover = s.cover;
  out.kernel_generators = s.generators;
  return out;
}

PipelineResult present_subgroup(const std::vector<Word>& generators, OrbicomplexRef x,
                                 const PipelineBudget& budget) {
  if (x->branch < 2)
    throw Error(ErrorKind::precondition, "torsion_free", "the pipeline needs n >= 2");
  const FiniteQuotient q = find_exponent_n_quotient(*x, budget.max_degree, budget.seed);
  auto cover = std::make_shared<const UnwrappedCover>(build_unwrapped_cover(x, q));

  std::vector<Word> reduced;
  bool passage = false;
  for (const Word& h : generators) {
    const Word r = free_reduce(h);
    if (r.empty()) continue;
    reduced.push_back(r);
    if (act(q, 0, r) != 0) passage = true;
  }
  const std::vector<Word> kernel = pull_back_subgroup(reduced, q);

  if (kernel.empty()) {
    PipelineResult out;
    out.stabilized = true;
    out.certificate_level = budget.max_word_length;
    out.cover = cover;
    out.notes.push_back("trivial subgroup");
    return out;
  }

  PipelineState s = seed_immersion(kernel, cover, budget);
  bool stabilized = false;
  std::vector<std::string> notes;
  for (;;) {
    if (s.cursor == s.candidates.size()) {
      ++s.sweeps;
      if (!s.changed_in_sweep) {
        stabilized = !s.candidates_truncated;
        if (s.candidates_truncated) notes.push_back("candidate list truncated");
        break;
      }
      s.cursor = 0;
      s.changed_in_sweep = false;
    }
    if (s.steps >= budget.max_steps) {
      notes.push_back("step budget exhausted");
      break;
    }
    if (refine_step(s) == StepOutcome::extended && s.stage > budget.max_stages) {
      notes.push_back("stage budget exhausted");
      break;
    }
  }

  PipelineResult out = extract_presentation(s);
  out.stabilized = stabilized;
  out.finite_index_passage = passage;
  out.certificate_level = stabilized ? budget.max_word_length : 0;
  out.notes = std::move(notes);
  if (passage) out.notes.push_back("finite-index passage to the kernel of the quotient");
  out.final_state = std::move(s);
  return out;
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "gens:";
  for (const std::string& g : p.generators) out << ' ' << g;
  out << " ; rels:";
  if (!p.generators.empty() || !p.relators.empty()) {
    const Alphabet alphabet(p.generators);
    for (std::size_t i = 0; i < p.relators.size(); ++i)
      out << (i ? " ; " : " ") << format_word(p.relators[i], alphabet);
  }
  return out.str();
}

Presentation parse_presentation(std::string_view text) {
  const std::string body(trim(text));
  if (body.rfind("gens:", 0) != 0) parse_fail(1, "expected 'gens:'");
  const std::size_t rels = body.find("; rels:");
  if (rels == std::string::npos) parse_fail(1, "expected '; rels:'");
  Presentation p;
  p.generators = split_ws(body.substr(5, rels - 5));
  const Alphabet alphabet(p.generators);
  const std::string rest = body.substr(rels + 7);
  if (trim(rest).empty()) return p;
  std::size_t from = 0;
  for (;;) {
    const std::size_t semi = rest.find(';', from);
    p.relators.push_back(parse_word(rest.substr(from, semi - from), alphabet));
    if (semi == std::string::npos) break;
    from = semi + 1;
  }
  return p;
}

std::string format_stage_table(const std::vector<StageRecord>& history) {
  std::ostringstream out;
  out << "stage,chi1,chi2,cells,free_edges,core_cells,cursor,stable_for\n";
  for (const StageRecord& r : history)
    out << r.stage << ',' << r.chi1 << ',' << r.chi2 << ',' << r.cells << ',' << r.free_edges
        << ',' << r.core_cells << ',' << r.cursor << ',' << r.stable_for << '\n';
  return out.str();
}

}  // namespace orelco
