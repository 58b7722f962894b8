#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// library routine it is meant to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "orelco/complex.hpp"
#include "orelco/covers.hpp"
#include "orelco/orbicomplex.hpp"
#include "orelco/random.hpp"
#include "orelco/words.hpp"

namespace oracle {

using namespace orelco;

inline Word reduce(const Word& u) {
  Word out;
  for (Letter x : u) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word cyclic_reduce(Word u) {
  u = reduce(u);
  std::size_t i = 0;
  std::size_t j = u.size();
  while (j - i >= 2 && u[i] == -u[j - 1]) {
    ++i;
    --j;
  }
  return Word(u.begin() + static_cast<std::ptrdiff_t>(i), u.begin() + static_cast<std::ptrdiff_t>(j));
}

inline Word inv(const Word& u) {
  Word out;
  for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back(-*it);
  return out;
}

inline Word cat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Word pow(const Word& u, std::size_t k) {
  Word out;
  for (std::size_t i = 0; i < k; ++i) out = cat(out, u);
  return out;
}

/// Permutation image of a word under a right action given as generator images.
inline std::vector<std::uint32_t> image(const std::vector<std::vector<std::uint32_t>>& gens,
                                        std::uint32_t degree, const Word& u) {
  std::vector<std::vector<std::uint32_t>> inverse(gens.size(), std::vector<std::uint32_t>(degree));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::uint32_t p = 0; p < degree; ++p) inverse[g][gens[g][p]] = p;
  std::vector<std::uint32_t> out(degree);
  for (std::uint32_t p = 0; p < degree; ++p) {
    std::uint32_t cur = p;
    for (Letter x : u) {
      const auto g = static_cast<std::size_t>((x > 0 ? x : -x) - 1);
      cur = x > 0 ? gens[g][cur] : inverse[g][cur];
    }
    out[p] = cur;
  }
  return out;
}

inline bool is_identity(const std::vector<std::uint32_t>& perm) {
  for (std::uint32_t p = 0; p < perm.size(); ++p)
    if (perm[p] != p) return false;
  return true;
}

/// Order of a permutation by repeated composition.
inline std::uint32_t order(const std::vector<std::uint32_t>& perm) {
  std::vector<std::uint32_t> cur = perm;
  for (std::uint32_t k = 1; k <= 100000; ++k) {
    if (is_identity(cur)) return k;
    std::vector<std::uint32_t> next(cur.size());
    for (std::uint32_t p = 0; p < cur.size(); ++p) next[p] = perm[cur[p]];
    cur = next;
  }
  return 0;
}

/// V - E (+ F) counted from the raw incidence data.
inline std::int64_t euler(const TwoComplex& c, bool with_cells) {
  std::int64_t chi = 0;
  for (VertexId v = 0; v < c.vertex_count(); ++v) ++chi;
  for (EdgeId e = 0; e < c.edge_count(); ++e) --chi;
  if (with_cells)
    for (CellId k = 0; k < c.cell_count(); ++k) ++chi;
  return chi;
}

/// Link injectivity: no two darts at a vertex share an image.
inline bool link_injective(const CellMorphism& m) {
  const Graph& g = m.source->skeleton();
  std::set<std::pair<VertexId, DartId>> seen;
  for (DartId d = 0; d < g.dart_count(); ++d)
    if (!seen.insert({g.origin(d), m.image(d)}).second) return false;
  return true;
}

/// Side injectivity into a 2-complex: no two cell sides along one source edge
/// reach the same target cell position.
inline bool side_injective(const CellMorphism& m) {
  std::set<std::tuple<EdgeId, CellId, std::uint32_t>> seen;
  for (CellId k = 0; k < m.source->cell_count(); ++k) {
    const CellImage& ci = m.cell_map[k];
    const auto len = static_cast<std::uint32_t>(m.target->cell(ci.cell).boundary.size());
    for (std::uint32_t p = 0; p < len; ++p) {
      const std::uint32_t q = ci.alignment.orientation == Orientation::positive
                                  ? (p + ci.alignment.offset) % len
                                  : (2 * len - p - ci.alignment.offset - 1) % len;
      if (!seen.insert({edge_of(m.source->cell(k).boundary[p]), ci.cell, q}).second) return false;
    }
  }
  return true;
}

/// Side table of an orbicomplex map: (source edge, side of D_n) per cell position.
inline bool orbi_side_injective(const OrbiMorphism& m) {
  const std::uint32_t len = m.target->cell_length();
  const std::uint32_t wl = m.target->relator_length();
  std::set<std::pair<EdgeId, std::uint32_t>> seen;
  for (CellId k = 0; k < m.source->cell_count(); ++k) {
    const Alignment a = m.cell_alignment[k];
    const auto& bd = m.source->cell(k).boundary;
    for (std::uint32_t p = 0; p < bd.size(); ++p) {
      const std::uint32_t q = a.orientation == Orientation::positive
                                  ? (p + a.offset) % len
                                  : (2 * len - p - a.offset - 1) % len;
      if (!seen.insert({edge_of(bd[p]), q % wl}).second)
        return false;
    }
  }
  return true;
}

/// Searches for an isomorphism of connected sources commuting with immersions
/// into one target, by trying every image of vertex 0.
inline bool isomorphic_over(const CellMorphism& a, const CellMorphism& b) {
  const TwoComplex& x = *a.source;
  const TwoComplex& y = *b.source;
  if (x.vertex_count() != y.vertex_count() || x.edge_count() != y.edge_count() ||
      x.cell_count() != y.cell_count())
    return false;
  if (x.vertex_count() == 0) return true;
  for (VertexId start = 0; start < y.vertex_count(); ++start) {
    if (b.vertex_map[start] != a.vertex_map[0]) continue;
    std::vector<std::int64_t> vmap(x.vertex_count(), -1);
    std::vector<std::int64_t> dmap(2 * x.edge_count(), -1);
    vmap[0] = start;
    std::vector<VertexId> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (DartId d : x.skeleton().link(v)) {
        std::optional<DartId> match;
        for (DartId e : y.skeleton().link(static_cast<VertexId>(vmap[v])))
          if (b.image(e) == a.image(d)) match = e;
        if (!match) {
          ok = false;
          break;
        }
        dmap[d] = *match;
        const VertexId u = x.skeleton().terminus(d);
        const VertexId t = y.skeleton().terminus(*match);
        if (vmap[u] < 0) {
          vmap[u] = t;
          stack.push_back(u);
        } else if (vmap[u] != t) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    if (std::find(vmap.begin(), vmap.end(), -1) != vmap.end()) continue;
    std::set<std::int64_t> hit(vmap.begin(), vmap.end());
    if (hit.size() != vmap.size()) continue;
    // cells: multiset of (target cell image, mapped boundary up to rotation)
    auto key = [](const std::vector<DartId>& bd) {
      std::vector<DartId> best = bd;
      for (std::size_t r = 1; r < bd.size(); ++r) {
        std::vector<DartId> rot(bd.begin() + static_cast<std::ptrdiff_t>(r), bd.end());
        rot.insert(rot.end(), bd.begin(), bd.begin() + static_cast<std::ptrdiff_t>(r));
        best = std::min(best, rot);
      }
      return best;
    };
    std::multiset<std::pair<CellId, std::vector<DartId>>> ca;
    std::multiset<std::pair<CellId, std::vector<DartId>>> cb;
    for (CellId k = 0; k < x.cell_count(); ++k) {
      std::vector<DartId> bd;
      for (DartId d : x.cell(k).boundary) bd.push_back(static_cast<DartId>(dmap[d]));
      ca.insert({a.cell_map[k].cell, key(bd)});
    }
    for (CellId k = 0; k < y.cell_count(); ++k) cb.insert({b.cell_map[k].cell, key(y.cell(k).boundary)});
    if (ca == cb) return true;
  }
  return false;
}

/// Whether the immersed graph reads u as a closed loop at `base`.
inline bool accepts(const CellMorphism& m, VertexId base, const Word& u,
                    const std::vector<DartId>& letter_darts) {
  const Graph& g = m.source->skeleton();
  VertexId v = base;
  for (Letter x : u) {
    const auto gen = static_cast<std::size_t>((x > 0 ? x : -x) - 1);
    const DartId want = x > 0 ? letter_darts[gen] : reverse(letter_darts[gen]);
    bool moved = false;
    for (DartId d : g.link(v))
      if (m.image(d) == want) {
        v = g.terminus(d);
        moved = true;
        break;
      }
    if (!moved) return false;
  }
  return v == base;
}

/// Nielsen-Schreier rank of an index-k subgroup of a free group of rank r.
inline std::int64_t schreier_rank(std::int64_t r, std::int64_t k) { return k * (r - 1) + 1; }

/// Random product of conjugates of relator powers, each conjugator of bounded length.
inline Word random_consequence(Rng& rng, const Word& rn, std::size_t factors,
                               std::size_t conjugator_length, std::size_t generators) {
  Word out;
  for (std::size_t f = 0; f < factors; ++f) {
    Word c;
    const std::size_t len = rng.below(conjugator_length + 1);
    for (std::size_t i = 0; i < len; ++i) {
      const auto g = static_cast<Letter>(1 + rng.below(generators));
      c.push_back(rng.chance(0.5) ? g : -g);
    }
    const Word r = rng.chance(0.5) ? rn : inv(rn);
    out = cat(out, cat(cat(c, r), inv(c)));
  }
  return reduce(out);
}

}  // namespace oracle
