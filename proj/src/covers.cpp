#include "orelco/covers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "orelco/complex_io.hpp"
#include "orelco/error.hpp"
#include "orelco/random.hpp"
#include "orelco/text.hpp"

namespace orelco {

std::uint32_t act(const FiniteQuotient& q, std::uint32_t point, Letter x) {
  const auto& perm = q.images[generator_of(x)];
  if (x > 0) return perm[point];
  for (std::uint32_t p = 0; p < q.degree; ++p)
    if (perm[p] == point) return p;
  throw Error(ErrorKind::invalid_input, "bad_permutation", "not a bijection");
}

std::uint32_t act(const FiniteQuotient& q, std::uint32_t point, const Word& u) {
  for (Letter x : u) point = act(q, point, x);
  return point;
}

std::vector<std::uint32_t> word_permutation(const FiniteQuotient& q, const Word& u) {
  std::vector<std::uint32_t> out(q.degree);
  for (std::uint32_t p = 0; p < q.degree; ++p) out[p] = act(q, p, u);
  return out;
}

bool is_transitive(const FiniteQuotient& q) {
  std::vector<bool> seen(q.degree, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::uint32_t p = stack.back();
    stack.pop_back();
    for (std::uint32_t g = 0; g < q.images.size(); ++g)
      for (Letter x : {letter_of(g), letter_of(g, true)}) {
        const std::uint32_t r = act(q, p, x);
        if (!seen[r]) {
          seen[r] = true;
          ++count;
          stack.push_back(r);
        }
      }
  }
  return count == q.degree;
}

bool satisfies_exponent_condition(const FiniteQuotient& q, const Word& w, std::uint32_t n) {
  const auto perm = word_permutation(q, w);
  for (std::uint32_t p = 0; p < q.degree; ++p) {
    std::uint32_t length = 1;
    for (std::uint32_t r = perm[p]; r != p; r = perm[r]) ++length;
    if (length != n) return false;
  }
  return true;
}

void validate_quotient(const FiniteQuotient& q, std::size_t generators) {
  if (q.degree == 0) throw Error(ErrorKind::invalid_input, "bad_quotient", "degree must be positive");
  if (q.images.size() != generators)
    throw Error(ErrorKind::invalid_input, "bad_quotient", "one permutation per generator required");
  for (const auto& perm : q.images) {
    if (perm.size() != q.degree)
      throw Error(ErrorKind::invalid_input, "bad_quotient", "permutation of the wrong size");
    std::vector<bool> hit(q.degree, false);
    for (std::uint32_t p : perm) {
      if (p >= q.degree || hit[p])
        throw Error(ErrorKind::invalid_input, "bad_quotient", "not a permutation");
      hit[p] = true;
    }
  }
}

namespace {

FiniteQuotient cyclic_quotient(const std::vector<std::uint32_t>& shifts, std::uint32_t m) {
  FiniteQuotient q;
  q.degree = m;
  for (std::uint32_t s : shifts) {
    std::vector<std::uint32_t> perm(m);
    for (std::uint32_t p = 0; p < m; ++p) perm[p] = (p + s) % m;
    q.images.push_back(std::move(perm));
  }
  return q;
}

constexpr std::uint64_t cyclic_budget = 1u << 20;
constexpr std::uint32_t random_tries = 4000;

}  // namespace

FiniteQuotient find_exponent_n_quotient(const OneRelatorOrbicomplex& x, std::uint32_t max_degree,
                                        std::uint64_t seed) {
  const Word w = relator_word(x);
  const std::uint32_t n = x.branch;
  const auto gens = static_cast<std::uint32_t>(x.gamma.edge_count());
  if (n == 1) return cyclic_quotient(std::vector<std::uint32_t>(gens, 0), 1);

  for (std::uint32_t m = n; m <= max_degree; m += n) {
    std::vector<std::uint32_t> shifts(gens, 0);
    for (std::uint64_t tried = 0; tried < cyclic_budget; ++tried) {
      std::int64_t sum = 0;
      std::uint32_t g_all = m;
      for (std::uint32_t g = 0; g < gens; ++g) g_all = std::gcd(g_all, shifts[g]);
      for (Letter l : w) sum += l > 0 ? shifts[generator_of(l)] : -static_cast<std::int64_t>(shifts[generator_of(l)]);
      const auto s = static_cast<std::uint32_t>(((sum % m) + m) % m);
      if (g_all == 1 && m / std::gcd(s, m) == n) return cyclic_quotient(shifts, m);
      // next assignment, generator 0 least significant
      std::uint32_t g = 0;
      while (g < gens && ++shifts[g] == m) shifts[g++] = 0;
      if (g == gens) break;
    }
  }

  Rng rng(seed);
  for (std::uint32_t k = 2; k <= max_degree; ++k)
    if (auto q = random_exponent_n_quotient(x, k, rng, random_tries)) return *q;
  throw Error(ErrorKind::budget_exhausted, "no_quotient",
              "no exponent-" + std::to_string(n) + " quotient up to degree " +
                  std::to_string(max_degree));
}

std::optional<FiniteQuotient> random_exponent_n_quotient(const OneRelatorOrbicomplex& x,
                                                        std::uint32_t degree, Rng& rng,
                                                        std::uint32_t tries) {
  const Word w = relator_word(x);
  const auto gens = static_cast<std::uint32_t>(x.gamma.edge_count());
  if (degree % x.branch != 0) return std::nullopt;
  for (std::uint32_t t = 0; t < tries; ++t) {
    FiniteQuotient q;
    q.degree = degree;
    for (std::uint32_t g = 0; g < gens; ++g) q.images.push_back(rng.permutation(degree));
    if (is_transitive(q) && satisfies_exponent_condition(q, w, x.branch)) return q;
  }
  return std::nullopt;
}

FiniteQuotient parse_quotient(std::string_view text, const Alphabet& alphabet) {
  FiniteQuotient q;
  bool have_degree = false;
  std::vector<bool> have(alphabet.size(), false);
  q.images.assign(alphabet.size(), {});
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line = n + 1;
    const auto t = split_ws(strip_comment(lines[n]));
    if (t.empty()) continue;
    if (t[0] == "degree") {
      if (t.size() != 2 || have_degree) parse_fail(line, "expected a single 'degree <k>'");
      q.degree = static_cast<std::uint32_t>(parse_uint(t[1], "degree"));
      have_degree = true;
    } else if (t[0] == "perm") {
      if (!have_degree) parse_fail(line, "'degree' must precede 'perm'");
      if (t.size() < 3 || t[2] != ":") parse_fail(line, "expected 'perm <g> : i0 i1 ...'");
      const Letter x = alphabet.letter(t[1]);
      if (x < 0) parse_fail(line, "perm names a generator, not an inverse");
      const std::uint32_t g = generator_of(x);
      if (have[g]) parse_fail(line, "duplicate perm for '" + t[1] + "'");
      have[g] = true;
      for (std::size_t i = 3; i < t.size(); ++i)
        q.images[g].push_back(static_cast<std::uint32_t>(parse_uint(t[i], "perm")));
    } else {
      parse_fail(line, "unknown directive '" + t[0] + "'");
    }
  }
  if (!have_degree) throw Error(ErrorKind::parse, "parse_error", "missing degree");
  for (std::uint32_t g = 0; g < alphabet.size(); ++g)
    if (!have[g])
      throw Error(ErrorKind::parse, "parse_error", "missing perm for '" + alphabet.name(g) + "'");
  validate_quotient(q, alphabet.size());
  return q;
}

std::string format_quotient(const FiniteQuotient& q, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "degree " << q.degree << '\n';
  for (std::uint32_t g = 0; g < q.images.size(); ++g) {
    out << "perm " << alphabet.name(g) << " :";
    for (std::uint32_t p : q.images[g]) out << ' ' << p;
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<DartId> lift_in(const FiniteQuotient& q, const Word& u, std::uint32_t start) {
  std::vector<DartId> path;
  std::uint32_t cur = start;
  for (Letter x : u) {
    const std::uint32_t g = generator_of(x);
    if (x > 0) {
      path.push_back(forward_dart(generator_edge(q, g, cur)));
      cur = q.images[g][cur];
    } else {
      const std::uint32_t prev = act(q, cur, x);
      path.push_back(reverse(forward_dart(generator_edge(q, g, prev))));
      cur = prev;
    }
  }
  return path;
}

}  // namespace

UnwrappedCover build_unwrapped_cover(OrbicomplexRef x, const FiniteQuotient& q) {
  const Word w = relator_word(*x);
  const Alphabet alphabet = rose_alphabet(x->gamma);
  validate_quotient(q, alphabet.size());
  if (!satisfies_exponent_condition(q, w, x->branch))
    throw Error(ErrorKind::invalid_input, "exponent_condition",
                "some cycle of the relator image has length other than n");
  if (!is_transitive(q))
    throw Error(ErrorKind::invalid_input, "not_transitive", "quotient action is not transitive");

  TwoComplex graph;
  for (std::uint32_t p = 0; p < q.degree; ++p) graph.add_vertex("p" + std::to_string(p));
  for (std::uint32_t g = 0; g < alphabet.size(); ++g)
    for (std::uint32_t p = 0; p < q.degree; ++p)
      graph.add_edge(p, q.images[g][p], alphabet.name(g) + "_" + std::to_string(p),
                     alphabet.name(g));
  graph.set_base(0);

  const Word wn = power(w, x->branch);
  TwoComplex lifted = graph;
  for (std::uint32_t p = 0; p < q.degree; ++p)
    lifted.add_cell(lift_in(q, wn, p), "l" + std::to_string(p));

  UnwrappedCover out;
  out.base = x;
  out.quotient = q;
  TwoComplex cover = graph;
  std::vector<bool> assigned(q.degree, false);
  for (std::uint32_t p = 0; p < q.degree; ++p) {
    if (assigned[p]) continue;
    CoverFamily family;
    family.cell = cover.add_cell(lift_in(q, wn, p));
    for (std::uint32_t r = p; !assigned[r]; r = act(q, r, w)) {
      assigned[r] = true;
      family.points.push_back(r);
    }
    out.families.push_back(std::move(family));
  }
  out.lifted = share(std::move(lifted));
  out.cover = share(std::move(cover));

  OrbiMorphism m;
  m.source = out.cover;
  m.target = x;
  m.vertex_map.assign(q.degree, 0);
  for (std::uint32_t g = 0; g < alphabet.size(); ++g)
    for (std::uint32_t p = 0; p < q.degree; ++p) m.edge_map.push_back(forward_dart(g));
  m.cell_alignment.assign(out.cover->cell_count(), Alignment{});
  out.covering = std::move(m);
  return out;
}

std::string format_cover(const UnwrappedCover& c) {
  std::ostringstream out;
  out << format_complex(*c.cover);
  for (const CoverFamily& f : c.families) {
    out << "family " << c.cover->cell(f.cell).name << " :";
    for (std::uint32_t p : f.points) out << ' ' << p;
    out << '\n';
  }
  return out.str();
}

ParsedCover parse_cover(std::string_view text) {
  ParsedComplex parsed = parse_complex_text(text, true);
  ParsedCover out;
  const NameIndex names(parsed.complex);
  for (const ExtraLine& x : parsed.extras) {
    const auto& t = x.tokens;
    if (t[0] != "family") parse_fail(x.line, "unknown directive '" + t[0] + "'");
    if (t.size() < 4 || t[2] != ":") parse_fail(x.line, "expected 'family <cell> : <points>'");
    CoverFamily f;
    f.cell = names.cell(t[1], x.line);
    for (std::size_t i = 3; i < t.size(); ++i)
      f.points.push_back(static_cast<std::uint32_t>(parse_uint(t[i], "point")));
    out.families.push_back(std::move(f));
  }
  out.cover = std::move(parsed.complex);
  return out;
}

CoverReport verify_orbi_cover(const OrbiMorphism& m, std::uint32_t sheets) {
  CoverReport r;
  const OneRelatorOrbicomplex& x = *m.target;
  const TwoComplex& y = *m.source;
  const OrbiCheck check = check_orbi_immersion(m);
  if (check.kind != MapClass::immersion)
    r.failures.push_back("not an immersion: " + check.witness);
  else if (!check.covering)
    r.failures.push_back("not locally bijective: " + check.witness);

  if (check.kind != MapClass::not_morphism) {
    std::vector<std::uint32_t> over_vertex(x.gamma.vertex_count(), 0);
    for (VertexId v : m.vertex_map) ++over_vertex[v];
    for (VertexId v = 0; v < over_vertex.size(); ++v)
      if (over_vertex[v] != sheets)
        r.failures.push_back("vertex " + x.gamma.vertex_name(v) + " has " +
                             std::to_string(over_vertex[v]) + " preimages");
    std::vector<std::uint32_t> over_edge(x.gamma.edge_count(), 0);
    for (DartId d : m.edge_map) ++over_edge[edge_of(d)];
    for (EdgeId e = 0; e < over_edge.size(); ++e)
      if (over_edge[e] != sheets)
        r.failures.push_back("edge " + x.gamma.edge(e).name + " has " +
                             std::to_string(over_edge[e]) + " preimages");
  }

  r.chi = Rational(euler_characteristic(y, 2));
  const Rational gamma_chi(static_cast<std::int64_t>(x.gamma.vertex_count()) -
                           static_cast<std::int64_t>(x.gamma.edge_count()));
  r.expected = Rational(sheets) * (gamma_chi + Rational(1, x.branch));
  if (r.chi != r.expected) {
    std::ostringstream msg;
    msg << "euler characteristic " << r.chi << " differs from " << r.expected;
    r.failures.push_back(msg.str());
  }
  r.pass = r.failures.empty();
  return r;
}

CoverReport verify_cover(const UnwrappedCover& c) {
  CoverReport r = verify_orbi_cover(c.covering, c.quotient.degree);
  const std::uint32_t n = c.base->branch;
  const std::uint32_t w_length = c.base->relator_length();
  std::vector<std::uint32_t> seen(c.quotient.degree, 0);
  for (const CoverFamily& f : c.families) {
    if (f.points.size() != n)
      r.failures.push_back("family of cell " + c.cover->cell(f.cell).name + " has " +
                           std::to_string(f.points.size()) + " members");
    const auto& boundary = c.cover->cell(f.cell).boundary;
    for (std::size_t j = 0; j < f.points.size(); ++j) {
      const std::uint32_t p = f.points[j];
      if (p >= seen.size()) {
        r.failures.push_back("family point out of range");
        continue;
      }
      ++seen[p];
      std::vector<DartId> rotated = boundary;
      std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>((j * w_length) % rotated.size()), rotated.end());
      if (c.lifted->cell(p).boundary != rotated)
        r.failures.push_back("lift at point " + std::to_string(p) +
                             " is not the family cycle rotated by " + std::to_string(j) + "|w|");
    }
  }
  for (std::uint32_t p = 0; p < seen.size(); ++p)
    if (seen[p] != 1)
      r.failures.push_back("lift at point " + std::to_string(p) + " lies in " +
                           std::to_string(seen[p]) + " families");
  if (c.families.size() * n != c.lifted->cell_count())
    r.failures.push_back("lift count is not n times the cell count");
  r.pass = r.failures.empty();
  return r;
}

std::vector<Word> pull_back_subgroup(const std::vector<Word>& generators, const FiniteQuotient& q) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<Word> reduced;
  for (const Word& h : generators) reduced.push_back(free_reduce(h));

  std::vector<std::uint32_t> found(q.degree, unset);  // discovery order
  std::vector<Word> tree(q.degree);
  std::vector<std::vector<bool>> tree_edge(q.degree, std::vector<bool>(reduced.size(), false));
  std::vector<std::uint32_t> queue{0};
  found[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t p = queue[head];
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      const std::uint32_t r = act(q, p, reduced[i]);
      if (found[r] != unset) continue;
      found[r] = static_cast<std::uint32_t>(queue.size());
      queue.push_back(r);
      tree[r] = free_reduce(concat(tree[p], reduced[i]));
      tree_edge[p][i] = true;
    }
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      const std::uint32_t r = act(q, p, inverse(reduced[i]));
      if (found[r] != unset) continue;
      found[r] = static_cast<std::uint32_t>(queue.size());
      queue.push_back(r);
      tree[r] = free_reduce(concat(tree[p], inverse(reduced[i])));
      tree_edge[r][i] = true;
    }
  }

  std::vector<Word> out;
  for (std::uint32_t p = 0; p < q.degree; ++p) {
    if (found[p] == unset) continue;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (tree_edge[p][i]) continue;
      const std::uint32_t r = act(q, p, reduced[i]);
      Word s = free_reduce(concat(concat(tree[p], reduced[i]), inverse(tree[r])));
      if (!s.empty()) out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<DartId> lift_word(const UnwrappedCover& c, const Word& u, std::uint32_t start) {
  return lift_in(c.quotient, u, start);
}

}  // namespace orelco
