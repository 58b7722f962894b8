#include "orelco/orbicomplex.hpp"

#include <algorithm>
#include <sstream>

#include "orelco/complex_io.hpp"
#include "orelco/error.hpp"
#include "orelco/text.hpp"

namespace orelco {

std::vector<DartId> OneRelatorOrbicomplex::relator_power() const {
  std::vector<DartId> out;
  out.reserve(cell_length());
  for (std::uint32_t k = 0; k < branch; ++k) out.insert(out.end(), relator.begin(), relator.end());
  return out;
}

OneRelatorOrbicomplex build_orbicomplex(Graph gamma, std::vector<DartId> w, std::uint32_t n) {
  if (n < 1) throw Error(ErrorKind::invalid_input, "bad_branch", "branch index must be >= 1");
  if (w.empty()) throw Error(ErrorKind::invalid_input, "empty_relator", "relator must be nonempty");
  for (DartId d : w)
    if (d >= gamma.dart_count())
      throw Error(ErrorKind::invalid_input, "unknown_edge", "relator dart out of range");
  const std::size_t length = w.size();
  for (std::size_t i = 0; i < length; ++i) {
    const DartId here = w[i];
    const DartId next = w[(i + 1) % length];
    if (gamma.terminus(here) != gamma.origin(next))
      throw Error(ErrorKind::invalid_input, "non_closed_relator",
                  "break after position " + std::to_string(i));
    if (next == reverse(here))
      throw Error(ErrorKind::invalid_input, "backtracking_relator",
                  "backtrack after position " + std::to_string(i));
  }
  Word letters;
  for (DartId d : w) letters.push_back(static_cast<Letter>(d) + 1);
  const auto power = is_proper_power(letters);
  if (power.proper)
    throw Error(ErrorKind::invalid_input, "proper_power",
                "relator is a " + std::to_string(power.exponent) + "-th power");
  return {std::move(gamma), std::move(w), n};
}

Graph rose(const std::vector<std::string>& generators) {
  const Alphabet check(generators);
  Graph g;
  const VertexId o = g.add_vertex("o");
  for (const auto& name : generators) g.add_edge(o, o, name);
  return g;
}

bool is_rose(const Graph& g) { return g.vertex_count() == 1; }

Alphabet rose_alphabet(const Graph& g) {
  std::vector<std::string> names;
  for (const Edge& e : g.edges()) names.push_back(e.name);
  return Alphabet(std::move(names));
}

DartId letter_dart(Letter x) {
  const DartId f = forward_dart(generator_of(x));
  return x > 0 ? f : reverse(f);
}

Letter dart_letter(DartId d) { return letter_of(edge_of(d), !is_forward(d)); }

Word darts_to_word(const std::vector<DartId>& path) {
  Word u;
  u.reserve(path.size());
  for (DartId d : path) u.push_back(dart_letter(d));
  return u;
}

std::vector<DartId> word_to_darts(const Word& u) {
  std::vector<DartId> path;
  path.reserve(u.size());
  for (Letter x : u) path.push_back(letter_dart(x));
  return path;
}

OneRelatorOrbicomplex rose_orbicomplex(const std::vector<std::string>& generators,
                                       const Word& w, std::uint32_t n) {
  for (Letter x : w)
    if (generator_of(x) >= generators.size())
      throw Error(ErrorKind::invalid_input, "unknown_generator", "relator letter out of range");
  return build_orbicomplex(rose(generators), word_to_darts(w), n);
}

Word relator_word(const OneRelatorOrbicomplex& x) {
  if (!is_rose(x.gamma))
    throw Error(ErrorKind::precondition, "not_a_rose", "word algorithms need a rose");
  return darts_to_word(x.relator);
}

TwoComplex presentation_complex(const OneRelatorOrbicomplex& x) {
  TwoComplex c(x.gamma);
  c.add_cell(x.relator_power(), "D");
  return c;
}

TwoComplex relator_complex(const OneRelatorOrbicomplex& x) {
  TwoComplex c(x.gamma);
  c.add_cell(x.relator, "D");
  return c;
}

OneRelatorOrbicomplex parse_orbicomplex(std::string_view text) {
  ParsedComplex parsed = parse_complex_text(text, true);
  if (parsed.complex.cell_count() != 0)
    throw Error(ErrorKind::parse, "parse_error", "orbicomplex graph must not declare cells");
  const NameIndex names(parsed.complex);
  std::optional<std::vector<DartId>> w;
  std::optional<std::uint32_t> n;
  for (const ExtraLine& extra : parsed.extras) {
    const auto& t = extra.tokens;
    if (t[0] == "relator") {
      if (w) parse_fail(extra.line, "duplicate relator");
      if (t.size() < 2) parse_fail(extra.line, "expected 'relator <edge-path>'");
      std::vector<DartId> path;
      for (std::size_t i = 1; i < t.size(); ++i) path.push_back(names.dart(t[i], extra.line));
      w = std::move(path);
    } else if (t[0] == "branch") {
      if (n) parse_fail(extra.line, "duplicate branch");
      if (t.size() != 2) parse_fail(extra.line, "expected 'branch <n>'");
      n = static_cast<std::uint32_t>(parse_uint(t[1], "branch"));
    } else {
      parse_fail(extra.line, "unknown directive '" + t[0] + "'");
    }
  }
  if (!w) throw Error(ErrorKind::parse, "parse_error", "missing relator");
  if (!n) throw Error(ErrorKind::parse, "parse_error", "missing branch");
  return build_orbicomplex(parsed.complex.skeleton(), std::move(*w), *n);
}

std::string format_orbicomplex(const OneRelatorOrbicomplex& x) {
  std::string out = format_complex(TwoComplex(x.gamma));
  out += "relator " + format_path(x.gamma, x.relator) + "\n";
  out += "branch " + std::to_string(x.branch) + "\n";
  return out;
}

std::uint32_t disc_side(const OrbiMorphism& m, CellId c, std::uint32_t p) {
  const std::uint32_t length = m.target->cell_length();
  return aligned_position(m.cell_alignment[c], p, length) % m.target->relator_length();
}

OrbiCheck check_orbi_immersion(const OrbiMorphism& m) {
  if (!m.source || !m.target) return {MapClass::not_morphism, false, "missing complex"};
  const TwoComplex& s = *m.source;
  const OneRelatorOrbicomplex& x = *m.target;
  const Graph& sg = s.skeleton();
  const Graph& tg = x.gamma;
  if (m.vertex_map.size() != s.vertex_count() || m.edge_map.size() != s.edge_count() ||
      m.cell_alignment.size() != s.cell_count())
    return {MapClass::not_morphism, false, "map sizes do not match the source"};
  for (VertexId v = 0; v < s.vertex_count(); ++v)
    if (m.vertex_map[v] >= tg.vertex_count())
      return {MapClass::not_morphism, false, "vertex " + sg.vertex_name(v) + " maps out of range"};
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    const DartId img = m.edge_map[e];
    if (img >= tg.dart_count())
      return {MapClass::not_morphism, false, "edge " + sg.edge(e).name + " maps out of range"};
    const DartId d = forward_dart(e);
    if (tg.origin(img) != m.vertex_map[sg.origin(d)] ||
        tg.terminus(img) != m.vertex_map[sg.terminus(d)])
      return {MapClass::not_morphism, false,
              "edge " + sg.edge(e).name + " does not commute with incidence"};
  }
  const auto power = x.relator_power();
  for (CellId c = 0; c < s.cell_count(); ++c) {
    const auto& b = s.cell(c).boundary;
    if (b.size() != power.size())
      return {MapClass::not_morphism, false,
              "cell " + s.cell(c).name + " does not have length n|w|"};
    for (std::uint32_t i = 0; i < b.size(); ++i)
      if (m.image(b[i]) != aligned_dart(power, m.cell_alignment[c], i))
        return {MapClass::not_morphism, false,
                "cell " + s.cell(c).name + " does not spell w^n at position " +
                    std::to_string(i)};
  }

  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    std::vector<DartId> images;
    for (DartId d : sg.link(v)) images.push_back(m.image(d));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return {MapClass::morphism, false, "vertex " + sg.vertex_name(v) + " link not injective"};
  }
  const auto sides = sides_by_edge(s);
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    std::vector<std::uint32_t> images;
    for (const Side& side : sides[e]) images.push_back(disc_side(m, side.cell, side.position));
    std::sort(images.begin(), images.end());
    const auto dup = std::adjacent_find(images.begin(), images.end());
    if (dup != images.end())
      return {MapClass::morphism, false,
              "edge " + sg.edge(e).name + " has two sides on disc side " + std::to_string(*dup)};
  }

  OrbiCheck result{MapClass::immersion, true, {}};
  std::vector<std::size_t> disc_sides(tg.edge_count(), 0);
  for (DartId d : x.relator) ++disc_sides[edge_of(d)];
  for (VertexId v = 0; v < s.vertex_count() && result.covering; ++v)
    if (sg.link(v).size() != tg.link(m.vertex_map[v]).size()) {
      result.covering = false;
      result.witness = "vertex " + sg.vertex_name(v) + " link not surjective";
    }
  for (EdgeId e = 0; e < s.edge_count() && result.covering; ++e)
    if (sides[e].size() != disc_sides[edge_of(m.edge_map[e])]) {
      result.covering = false;
      result.witness = "edge " + sg.edge(e).name + " sides not surjective";
    }
  return result;
}

std::int64_t degree(const OrbiMorphism& m) {
  const OrbiCheck check = check_orbi_immersion(m);
  if (check.kind != MapClass::immersion)
    throw Error(ErrorKind::precondition, "not_immersion", check.witness);
  return static_cast<std::int64_t>(m.target->branch) *
         static_cast<std::int64_t>(m.source->cell_count());
}

std::int64_t degree(const CellMorphism& m) {
  const Classification check = classify_map(m);
  if (check.kind < MapClass::immersion)
    throw Error(ErrorKind::precondition, "not_immersion", check.witness);
  if (m.target->cell_count() == 0) return 0;
  std::vector<std::int64_t> count(m.target->cell_count(), 0);
  for (const CellImage& ci : m.cell_map) ++count[ci.cell];
  return *std::min_element(count.begin(), count.end());
}

namespace {

std::optional<Alignment> find_alignment(const std::vector<DartId>& power,
                                        const std::vector<DartId>& images,
                                        Orientation first) {
  if (images.size() != power.size()) return std::nullopt;
  const auto length = static_cast<std::uint32_t>(power.size());
  const Orientation second =
      first == Orientation::positive ? Orientation::negative : Orientation::positive;
  for (Orientation orient : {first, second})
    for (std::uint32_t o = 0; o < length; ++o) {
      const Alignment a{o, orient};
      bool ok = true;
      for (std::uint32_t i = 0; i < length && ok; ++i) ok = images[i] == aligned_dart(power, a, i);
      if (ok) return a;
    }
  return std::nullopt;
}

}  // namespace

OrbiMorphism realign(const OrbiMorphism& m) {
  OrbiMorphism out = m;
  const auto power = m.target->relator_power();
  for (CellId c = 0; c < m.source->cell_count(); ++c) {
    std::vector<DartId> images;
    for (DartId d : m.source->cell(c).boundary) images.push_back(m.image(d));
    const auto a = find_alignment(power, images, m.cell_alignment[c].orientation);
    if (!a)
      throw Error(ErrorKind::invalid_input, "not_morphism",
                  "cell " + m.source->cell(c).name + " does not spell w^n");
    out.cell_alignment[c] = *a;
  }
  return out;
}

OrbiMorphism derive_orbi_morphism(ComplexRef source, OrbicomplexRef target) {
  if (!is_rose(target->gamma))
    throw Error(ErrorKind::precondition, "not_a_rose", "labels are read over a rose");
  const Alphabet alphabet = rose_alphabet(target->gamma);
  const Graph& sg = source->skeleton();
  OrbiMorphism m;
  m.source = source;
  m.target = target;
  m.vertex_map.assign(source->vertex_count(), 0);
  for (EdgeId e = 0; e < sg.edge_count(); ++e) {
    const std::string& label = sg.edge(e).label;
    if (label.empty())
      throw Error(ErrorKind::invalid_input, "unlabeled_edge", sg.edge(e).name);
    m.edge_map.push_back(letter_dart(alphabet.letter(label)));
  }
  const auto power = target->relator_power();
  for (CellId c = 0; c < source->cell_count(); ++c) {
    std::vector<DartId> images;
    for (DartId d : source->cell(c).boundary) images.push_back(m.image(d));
    const auto a = find_alignment(power, images, Orientation::positive);
    if (!a)
      throw Error(ErrorKind::invalid_input, "not_morphism",
                  "cell " + source->cell(c).name + " does not spell w^n");
    m.cell_alignment.push_back(*a);
  }
  return m;
}

OrbiMorphism presentation_map(ComplexRef presentation, OrbicomplexRef target) {
  OrbiMorphism m;
  m.source = presentation;
  m.target = target;
  m.vertex_map.resize(presentation->vertex_count());
  for (VertexId v = 0; v < m.vertex_map.size(); ++v) m.vertex_map[v] = v;
  for (EdgeId e = 0; e < presentation->edge_count(); ++e) m.edge_map.push_back(forward_dart(e));
  m.cell_alignment.assign(presentation->cell_count(), Alignment{});
  return m;
}

WcyclesReport wcycles_audit(const OrbiMorphism& m, AuditMode mode) {
  const OrbiCheck check = check_orbi_immersion(m);
  if (check.kind != MapClass::immersion)
    throw Error(ErrorKind::precondition, "not_immersion", check.witness);
  const TwoComplex& y = *m.source;
  WcyclesReport r;
  r.irreducible = find_free_faces_and_edges(y).irreducible();
  r.rank_witness = rank_witness(y);
  if (mode == AuditMode::strict) {
    if (!r.irreducible)
      throw Error(ErrorKind::precondition, "reducible_source", "source has a free face");
    if (component_count(y.skeleton()) != 1)
      throw Error(ErrorKind::precondition, "disconnected_source", "source must be connected");
    if (r.rank_witness == 0)
      throw Error(ErrorKind::precondition, "contractible_source", "source 1-skeleton is a tree");
  }
  const auto n = static_cast<std::int64_t>(m.target->branch);
  r.chi1 = euler_characteristic(y, 1);
  r.chi2 = euler_characteristic(y, 2);
  r.cells = static_cast<std::int64_t>(y.cell_count());
  r.deg = n * r.cells;
  r.slack1 = r.chi1 + r.deg;
  r.slack2 = r.chi2 + (n - 1) * r.cells;
  r.pass = r.slack1 <= 0 && r.slack2 <= 0;
  r.rank_bound_holds = r.cells * (n - 1) <= r.rank_witness - 1;
  return r;
}

std::string wcycles_csv_header() { return "id,chi1,deg,slack1,chi2,cells,slack2,pass"; }

std::string wcycles_csv_row(const std::string& id, const WcyclesReport& r) {
  std::ostringstream out;
  out << id << ',' << r.chi1 << ',' << r.deg << ',' << r.slack1 << ',' << r.chi2 << ','
      << r.cells << ',' << r.slack2 << ',' << (r.pass ? "true" : "false");
  return out.str();
}

}  // namespace orelco
