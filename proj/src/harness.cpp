#include "orelco/harness.hpp"

#include <sstream>

#include "orelco/covers.hpp"
#include "orelco/error.hpp"
#include "orelco/folding.hpp"
#include "orelco/random.hpp"

namespace orelco {

namespace {

constexpr std::uint64_t fold_stream = 0x666f6c64ull;
constexpr std::uint64_t cover_stream = 0x636f7672ull;
constexpr std::size_t draw_factor = 50;

[[noreturn]] void violation(const std::string& suite, std::uint64_t seed, const std::string& what) {
  throw Error(ErrorKind::invariant_breach, suite + "_violation",
              "seed " + std::to_string(seed) + ": " + what);
}

struct PartialGraph {
  std::uint32_t vertices = 0;
  // out[g][v], in[g][v]: neighbour along generator g, or -1
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::vector<std::int64_t>> in;
};

PartialGraph random_partial_graph(Rng& rng, std::uint32_t v, std::uint32_t gens, double p) {
  PartialGraph g;
  g.vertices = v;
  g.out.assign(gens, std::vector<std::int64_t>(v, -1));
  g.in.assign(gens, std::vector<std::int64_t>(v, -1));
  for (std::uint32_t k = 0; k < gens; ++k) {
    const std::vector<std::uint32_t> perm = rng.permutation(v);
    for (std::uint32_t i = 0; i < v; ++i)
      if (rng.chance(p)) {
        g.out[k][i] = perm[i];
        g.in[k][perm[i]] = i;
      }
  }
  return g;
}

}  // namespace

OrbiMorphism random_irreducible_immersion(std::uint64_t seed, OrbicomplexRef x,
                                          const GeneratorParams& params) {
  if (!is_rose(x->gamma))
    throw Error(ErrorKind::precondition, "not_a_rose", "the generator needs a rose");
  if (params.max_vertices < 1)
    throw Error(ErrorKind::precondition, "bad_params", "vertex budget must be positive");
  Rng rng(seed);
  const auto gens = static_cast<std::uint32_t>(x->gamma.edge_count());
  const auto v = static_cast<std::uint32_t>(1 + rng.below(params.max_vertices));
  const PartialGraph pg = random_partial_graph(rng, v, gens, params.edge_probability);

  // component of vertex 0
  std::vector<std::int64_t> id(v, -1);
  std::vector<std::uint32_t> order{0};
  id[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::uint32_t k = 0; k < gens; ++k)
      for (std::int64_t u : {pg.out[k][order[i]], pg.in[k][order[i]]})
        if (u >= 0 && id[u] < 0) {
          id[u] = static_cast<std::int64_t>(order.size());
          order.push_back(static_cast<std::uint32_t>(u));
        }

  TwoComplex y;
  for (std::size_t i = 0; i < order.size(); ++i) y.add_vertex();
  y.set_base(0);
  std::vector<std::vector<std::int64_t>> edge_at(gens, std::vector<std::int64_t>(v, -1));
  OrbiMorphism m;
  m.target = x;
  m.vertex_map.assign(order.size(), 0);
  for (std::uint32_t k = 0; k < gens; ++k)
    for (std::uint32_t old : order)
      if (pg.out[k][old] >= 0) {
        edge_at[k][old] = static_cast<std::int64_t>(
            y.add_edge(static_cast<VertexId>(id[old]), static_cast<VertexId>(id[pg.out[k][old]]),
                       {}, x->gamma.edge(k).name));
        m.edge_map.push_back(forward_dart(k));
      }

  // closed lifts of w^n, one per start vertex
  const std::vector<DartId> wn = x->relator_power();
  std::vector<std::vector<DartId>> lifts;
  for (std::uint32_t start : order) {
    std::vector<DartId> path;
    std::int64_t cur = start;
    for (DartId d : wn) {
      const EdgeId k = edge_of(d);
      if (is_forward(d)) {
        if (pg.out[k][cur] < 0) break;
        path.push_back(forward_dart(static_cast<EdgeId>(edge_at[k][cur])));
        cur = pg.out[k][cur];
      } else {
        if (pg.in[k][cur] < 0) break;
        const std::int64_t prev = pg.in[k][cur];
        path.push_back(reverse(forward_dart(static_cast<EdgeId>(edge_at[k][prev]))));
        cur = prev;
      }
    }
    if (path.size() == wn.size() && cur == start) lifts.push_back(std::move(path));
  }
  rng.shuffle(lifts);

  for (const std::vector<DartId>& lift : lifts) {
    if (!rng.chance(params.cell_probability)) continue;
    TwoComplex trial = y;
    trial.add_cell(lift);
    OrbiMorphism t = m;
    t.source = share(trial);
    t.cell_alignment.push_back(Alignment{});
    if (check_orbi_immersion(t).kind >= MapClass::immersion) {
      y = std::move(trial);
      m.cell_alignment.push_back(Alignment{});
    }
  }

  const Subcomplex core = collapse_with_inclusion(y);
  OrbiMorphism out;
  out.source = share(core.complex);
  out.target = x;
  for (VertexId u : core.vertices) out.vertex_map.push_back(m.vertex_map[u]);
  for (EdgeId e : core.edges) out.edge_map.push_back(m.edge_map[e]);
  for (CellId c : core.cells) out.cell_alignment.push_back(m.cell_alignment[c]);
  return out;
}

namespace {

// Random morphism onto `b`: random walks and copies of cells of b, glued at
// vertices with equal images.
CellMorphism random_morphism(Rng& rng, ComplexRef b) {
  const Graph& bg = b->skeleton();
  TwoComplex a;
  CellMorphism m;
  m.target = b;
  std::vector<std::vector<VertexId>> over(b->vertex_count());
  auto vertex_over = [&](VertexId t, double reuse) {
    if (!over[t].empty() && rng.chance(reuse)) return over[t][rng.below(over[t].size())];
    const VertexId v = a.add_vertex();
    over[t].push_back(v);
    m.vertex_map.push_back(t);
    return v;
  };
  auto add_path = [&](VertexId from, const std::vector<DartId>& darts, bool closed) {
    VertexId cur = from;
    std::vector<DartId> path;
    for (std::size_t i = 0; i < darts.size(); ++i) {
      const VertexId t = bg.terminus(darts[i]);
      const VertexId next = closed && i + 1 == darts.size() ? from : vertex_over(t, 0.3);
      path.push_back(forward_dart(a.add_edge(cur, next)));
      m.edge_map.push_back(darts[i]);
      cur = next;
    }
    return path;
  };

  const std::size_t walks = 1 + rng.below(3);
  for (std::size_t j = 0; j < walks && bg.dart_count() > 0; ++j) {
    VertexId t = static_cast<VertexId>(rng.below(b->vertex_count()));
    const VertexId from = vertex_over(t, 0.5);
    std::vector<DartId> darts;
    const std::size_t len = 1 + rng.below(6);
    for (std::size_t i = 0; i < len && !bg.link(t).empty(); ++i) {
      const DartId d = bg.link(t)[rng.below(bg.link(t).size())];
      darts.push_back(d);
      t = bg.terminus(d);
    }
    add_path(from, darts, false);
  }
  const std::size_t cells = b->cell_count() == 0 ? 0 : rng.below(4);
  for (std::size_t j = 0; j < cells; ++j) {
    const auto c = static_cast<CellId>(rng.below(b->cell_count()));
    const std::vector<DartId>& bd = b->cell(c).boundary;
    const auto len = static_cast<std::uint32_t>(bd.size());
    const Alignment al{static_cast<std::uint32_t>(rng.below(len)),
                       rng.chance(0.5) ? Orientation::positive : Orientation::negative};
    std::vector<DartId> darts;
    for (std::uint32_t i = 0; i < len; ++i) darts.push_back(aligned_dart(bd, al, i));
    const VertexId from = vertex_over(bg.origin(darts.front()), 0.6);
    a.add_cell(add_path(from, darts, true));
    m.cell_map.push_back(CellImage{c, al});
    if (rng.chance(0.3)) {
      // a second cell on the same boundary
      a.add_cell(a.cells().back().boundary);
      m.cell_map.push_back(CellImage{c, al});
    }
  }
  if (a.vertex_count() == 0) {
    a.add_vertex();
    m.vertex_map.push_back(0);
  }
  m.source = share(std::move(a));
  return m;
}

ComplexRef fold_target(std::uint64_t seed, OrbicomplexRef x, const GeneratorParams& params) {
  if (seed % 2 == 0) {
    const FiniteQuotient q = find_exponent_n_quotient(*x, 12, 1);
    return build_unwrapped_cover(x, q).cover;
  }
  return random_irreducible_immersion(seed, x, params).source;
}

}  // namespace

void check_fold_trial(std::uint64_t seed, OrbicomplexRef x, const GeneratorParams& params) {
  Rng rng(seed);
  const CellMorphism m = random_morphism(rng, fold_target(seed, x, params));
  if (classify_map(m).kind == MapClass::not_morphism)
    violation("folding", seed, "generated map is not a morphism");

  const FoldResult f = fold(m);
  const Classification cls = classify_map(f.immersion);
  if (cls.kind < MapClass::immersion) violation("folding", seed, "not an immersion: " + cls.witness);
  if (!same_maps(compose(f.immersion, f.projection), m))
    violation("folding", seed, "fold does not factor the map");

  const FoldResult again = fold(f.immersion);
  if (!again.trace.empty() || canonical_form(again.immersion) != canonical_form(f.immersion))
    violation("folding", seed, "fold is not idempotent");

  const FoldResult other = fold(m, FoldOrder::highest_first);
  if (!isomorphic_over_target(f.immersion, other.immersion))
    violation("folding", seed, "fold order changes the result");
  const CellMorphism u = factor_unique(f, other.immersion, other.projection);
  if (!same_maps(compose(other.immersion, u), f.immersion) ||
      !same_maps(compose(u, f.projection), other.projection))
    violation("folding", seed, "factorization does not commute");

  const FoldResult replayed = replay_fold(m, f.trace);
  if (canonical_form(replayed.immersion) != canonical_form(f.immersion))
    violation("folding", seed, "replayed trace differs");
}

bool check_cover_trial(std::uint64_t seed, OrbicomplexRef x) {
  Rng rng(seed);
  const std::uint32_t n = x->branch;
  const auto degree = static_cast<std::uint32_t>(n * (1 + rng.below(3)));
  const auto q = random_exponent_n_quotient(*x, degree, rng, 4000);
  if (!q) return false;
  const UnwrappedCover c = build_unwrapped_cover(x, *q);
  const CoverReport r = verify_cover(c);
  if (!r.pass) violation("covers", seed, r.failures.front());
  std::size_t points = 0;
  for (const CoverFamily& f : c.families) {
    if (f.points.size() != n)
      violation("covers", seed, "family of size " + std::to_string(f.points.size()));
    points += f.points.size();
  }
  if (points != q->degree || c.lifted->cell_count() != q->degree)
    violation("covers", seed, "families do not partition the lifts");
  return true;
}

CampaignReport run_property_campaign(const CampaignConfig& cfg) {
  CampaignReport r;
  if (!cfg.x) throw Error(ErrorKind::precondition, "no_orbicomplex", "campaign needs a target");
  auto runs = [&](Suite s) {
    for (Suite t : cfg.suites)
      if (t == s) return true;
    return false;
  };

  if (runs(Suite::wcycles)) {
    for (std::size_t t = 0; r.rows.size() < cfg.trials; ++t) {
      if (t >= cfg.trials * draw_factor) {
        r.pass = false;
        break;
      }
      const std::uint64_t seed = derive_seed(cfg.master_seed, t);
      const OrbiMorphism m = random_irreducible_immersion(seed, cfg.x, cfg.params);
      const OrbiCheck check = check_orbi_immersion(m);
      if (check.kind < MapClass::immersion)
        violation("wcycles", seed, "generator emitted a non-immersion: " + check.witness);
      const TwoComplex& y = *m.source;
      if (component_count(y.skeleton()) != 1 || rank_witness(y) == 0) {
        ++r.degenerate;
        continue;
      }
      TrialRow row;
      row.trial = t;
      row.seed = seed;
      row.vertices = static_cast<std::int64_t>(y.vertex_count());
      row.edges = static_cast<std::int64_t>(y.edge_count());
      row.report = wcycles_audit(m, AuditMode::strict);
      if (!row.report.pass) violation("wcycles", seed, wcycles_csv_row(std::to_string(t), row.report));
      ++r.wcycles_passed;
      ++r.slack1_histogram[row.report.slack1];
      r.rows.push_back(row);
    }
  }
  if (runs(Suite::folding)) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      check_fold_trial(derive_seed(cfg.master_seed ^ fold_stream, t), cfg.x, cfg.params);
      ++r.fold_checks;
    }
  }
  if (runs(Suite::covers)) {
    for (std::size_t t = 0; r.cover_checks < cfg.cover_trials; ++t) {
      if (t >= cfg.cover_trials * draw_factor) {
        r.pass = false;
        break;
      }
      if (check_cover_trial(derive_seed(cfg.master_seed ^ cover_stream, t), cfg.x))
        ++r.cover_checks;
      else
        ++r.quotients_not_found;
    }
  }
  return r;
}

std::string campaign_csv(const CampaignReport& r) {
  std::ostringstream out;
  out << "trial,seed,V,E,cells,chi1,deg,slack1,chi2,slack2,pass\n";
  for (const TrialRow& row : r.rows) {
    const WcyclesReport& w = row.report;
    out << row.trial << ',' << row.seed << ',' << row.vertices << ',' << row.edges << ','
        << w.cells << ',' << w.chi1 << ',' << w.deg << ',' << w.slack1 << ',' << w.chi2 << ','
        << w.slack2 << ',' << (w.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string campaign_summary(const CampaignReport& r) {
  std::ostringstream out;
  out << "wcycles " << r.wcycles_passed << '/' << r.rows.size() << " pass, " << r.degenerate
      << " degenerate draws\n";
  out << "slack1 histogram:";
  for (const auto& [slack, count] : r.slack1_histogram) out << ' ' << slack << ':' << count;
  out << '\n';
  out << "folding " << r.fold_checks << " morphisms checked\n";
  out << "covers " << r.cover_checks << " quotients verified, "
      << r.quotients_not_found << " draws without a quotient\n";
  out << (r.pass ? "pass" : "fail") << '\n';
  return out.str();
}

}  // namespace orelco
