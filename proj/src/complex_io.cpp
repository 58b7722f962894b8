#include "orelco/complex_io.hpp"

#include <sstream>

#include "orelco/error.hpp"
#include "orelco/text.hpp"

namespace orelco {

namespace {

void check_name(std::string_view name, std::size_t line) {
  if (name.empty() || name.back() == '~' || name == ":" || name == "->")
    parse_fail(line, "invalid identifier '" + std::string(name) + "'");
}

std::vector<DartId> parse_path_tokens(const NameIndex& names,
                                      const std::vector<std::string>& tokens,
                                      std::size_t first, std::size_t line) {
  std::vector<DartId> path;
  for (std::size_t i = first; i < tokens.size(); ++i)
    path.push_back(names.dart(tokens[i], line));
  return path;
}

}  // namespace

NameIndex::NameIndex(const TwoComplex& c) {
  const Graph& g = c.skeleton();
  for (VertexId v = 0; v < g.vertex_count(); ++v) vertices.emplace(g.vertex_name(v), v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) edges.emplace(g.edge(e).name, e);
  for (CellId k = 0; k < c.cell_count(); ++k) cells.emplace(c.cell(k).name, k);
}

DartId NameIndex::dart(std::string_view token, std::size_t line) const {
  const bool reversed = !token.empty() && token.back() == '~';
  const EdgeId e = edge(reversed ? token.substr(0, token.size() - 1) : token, line);
  return reversed ? reverse(forward_dart(e)) : forward_dart(e);
}

VertexId NameIndex::vertex(std::string_view token, std::size_t line) const {
  const auto it = vertices.find(std::string(token));
  if (it == vertices.end()) parse_fail(line, "unknown vertex '" + std::string(token) + "'");
  return it->second;
}

EdgeId NameIndex::edge(std::string_view token, std::size_t line) const {
  const auto it = edges.find(std::string(token));
  if (it == edges.end()) parse_fail(line, "unknown edge '" + std::string(token) + "'");
  return it->second;
}

CellId NameIndex::cell(std::string_view token, std::size_t line) const {
  const auto it = cells.find(std::string(token));
  if (it == cells.end()) parse_fail(line, "unknown cell '" + std::string(token) + "'");
  return it->second;
}

ParsedComplex parse_complex_text(std::string_view text, bool allow_extras) {
  ParsedComplex out;
  TwoComplex& c = out.complex;
  std::unordered_map<std::string, VertexId> vertices;
  std::unordered_map<std::string, EdgeId> edges;
  std::unordered_map<std::string, CellId> cells;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> pending_cells;
  std::optional<std::pair<std::size_t, std::string>> base;

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line = n + 1;
    const auto tokens = split_ws(strip_comment(lines[n]));
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    if (kind == "vertex") {
      if (tokens.size() != 2) parse_fail(line, "expected 'vertex <id>'");
      check_name(tokens[1], line);
      if (vertices.count(tokens[1])) parse_fail(line, "duplicate vertex '" + tokens[1] + "'");
      vertices.emplace(tokens[1], c.add_vertex(tokens[1]));
    } else if (kind == "edge") {
      const bool plain = tokens.size() == 6;
      const bool labeled = tokens.size() == 8 && tokens[6] == "label";
      if ((!plain && !labeled) || tokens[2] != ":" || tokens[4] != "->")
        parse_fail(line, "expected 'edge <id> : <v> -> <v> [label <sym>]'");
      check_name(tokens[1], line);
      if (edges.count(tokens[1])) parse_fail(line, "duplicate edge '" + tokens[1] + "'");
      const auto tail = vertices.find(tokens[3]);
      const auto head = vertices.find(tokens[5]);
      if (tail == vertices.end()) parse_fail(line, "unknown vertex '" + tokens[3] + "'");
      if (head == vertices.end()) parse_fail(line, "unknown vertex '" + tokens[5] + "'");
      std::string label = labeled ? tokens[7] : std::string();
      if (labeled) check_name(label, line);
      edges.emplace(tokens[1], c.add_edge(tail->second, head->second, tokens[1], label));
    } else if (kind == "cell") {
      if (tokens.size() < 4 || tokens[2] != ":")
        parse_fail(line, "expected 'cell <id> : <edge-path>'");
      check_name(tokens[1], line);
      if (cells.count(tokens[1])) parse_fail(line, "duplicate cell '" + tokens[1] + "'");
      cells.emplace(tokens[1], static_cast<CellId>(pending_cells.size()));
      pending_cells.emplace_back(line, tokens);
    } else if (kind == "base") {
      if (tokens.size() != 2) parse_fail(line, "expected 'base <v>'");
      if (base) parse_fail(line, "duplicate base");
      base.emplace(line, tokens[1]);
    } else if (allow_extras) {
      out.extras.push_back({line, tokens});
    } else {
      parse_fail(line, "unknown directive '" + kind + "'");
    }
  }

  const NameIndex names(c);
  for (const auto& [line, tokens] : pending_cells)
    c.add_cell(parse_path_tokens(names, tokens, 3, line), tokens[1]);
  if (base) c.set_base(names.vertex(base->second, base->first));

  const auto problems = validate_complex(c);
  if (!problems.empty())
    throw Error(ErrorKind::invalid_input, "invalid_complex", problems.front());
  return out;
}

TwoComplex parse_complex(std::string_view text) {
  return parse_complex_text(text, false).complex;
}

std::string format_dart(const Graph& g, DartId d) {
  const std::string& name = g.edge(edge_of(d)).name;
  return is_forward(d) ? name : name + "~";
}

std::string format_path(const Graph& g, const std::vector<DartId>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ' ';
    out += format_dart(g, path[i]);
  }
  return out;
}

std::string format_complex(const TwoComplex& c) {
  const Graph& g = c.skeleton();
  std::ostringstream out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << "vertex " << g.vertex_name(v) << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << "edge " << edge.name << " : " << g.vertex_name(edge.tail) << " -> "
        << g.vertex_name(edge.head);
    if (!edge.label.empty()) out << " label " << edge.label;
    out << '\n';
  }
  for (const Cell& cell : c.cells())
    out << "cell " << cell.name << " : " << format_path(g, cell.boundary) << '\n';
  if (c.base()) out << "base " << g.vertex_name(*c.base()) << '\n';
  return out.str();
}

CellMorphism parse_morphism(std::string_view text, ComplexRef source, ComplexRef target) {
  const NameIndex src(*source);
  const NameIndex tgt(*target);
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  CellMorphism m;
  m.source = source;
  m.target = target;
  m.vertex_map.assign(source->vertex_count(), unset);
  m.edge_map.assign(source->edge_count(), unset);
  m.cell_map.assign(source->cell_count(), {unset, {}});

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line = n + 1;
    const auto tokens = split_ws(strip_comment(lines[n]));
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    if (kind == "vmap") {
      if (tokens.size() != 3) parse_fail(line, "expected 'vmap <id> <id>'");
      VertexId& slot = m.vertex_map[src.vertex(tokens[1], line)];
      if (slot != unset) parse_fail(line, "duplicate vmap for '" + tokens[1] + "'");
      slot = tgt.vertex(tokens[2], line);
    } else if (kind == "emap") {
      if (tokens.size() != 3) parse_fail(line, "expected 'emap <id> <id>[~]'");
      DartId& slot = m.edge_map[src.edge(tokens[1], line)];
      if (slot != unset) parse_fail(line, "duplicate emap for '" + tokens[1] + "'");
      slot = tgt.dart(tokens[2], line);
    } else if (kind == "cmap") {
      if (tokens.size() != 5 || tokens[3].rfind("rot=", 0) != 0 ||
          tokens[4].rfind("orient=", 0) != 0)
        parse_fail(line, "expected 'cmap <id> <id> rot=<k> orient=<+|->'");
      CellImage& slot = m.cell_map[src.cell(tokens[1], line)];
      if (slot.cell != unset) parse_fail(line, "duplicate cmap for '" + tokens[1] + "'");
      slot.cell = tgt.cell(tokens[2], line);
      slot.alignment.offset = static_cast<std::uint32_t>(parse_uint(tokens[3].substr(4), "rot"));
      const std::string orient = tokens[4].substr(7);
      if (orient == "+")
        slot.alignment.orientation = Orientation::positive;
      else if (orient == "-")
        slot.alignment.orientation = Orientation::negative;
      else
        parse_fail(line, "orient must be + or -");
    } else {
      parse_fail(line, "unknown directive '" + kind + "'");
    }
  }
  for (VertexId v = 0; v < m.vertex_map.size(); ++v)
    if (m.vertex_map[v] == unset)
      throw Error(ErrorKind::parse, "parse_error",
                  "missing vmap for '" + source->skeleton().vertex_name(v) + "'");
  for (EdgeId e = 0; e < m.edge_map.size(); ++e)
    if (m.edge_map[e] == unset)
      throw Error(ErrorKind::parse, "parse_error",
                  "missing emap for '" + source->skeleton().edge(e).name + "'");
  for (CellId k = 0; k < m.cell_map.size(); ++k)
    if (m.cell_map[k].cell == unset)
      throw Error(ErrorKind::parse, "parse_error",
                  "missing cmap for '" + source->cell(k).name + "'");
  return m;
}

std::string format_morphism(const CellMorphism& m) {
  const Graph& sg = m.source->skeleton();
  const Graph& tg = m.target->skeleton();
  std::ostringstream out;
  for (VertexId v = 0; v < m.vertex_map.size(); ++v)
    out << "vmap " << sg.vertex_name(v) << ' ' << tg.vertex_name(m.vertex_map[v]) << '\n';
  for (EdgeId e = 0; e < m.edge_map.size(); ++e)
    out << "emap " << sg.edge(e).name << ' ' << format_dart(tg, m.edge_map[e]) << '\n';
  for (CellId k = 0; k < m.cell_map.size(); ++k) {
    const CellImage& ci = m.cell_map[k];
    out << "cmap " << m.source->cell(k).name << ' ' << m.target->cell(ci.cell).name
        << " rot=" << ci.alignment.offset << " orient="
        << (ci.alignment.orientation == Orientation::positive ? '+' : '-') << '\n';
  }
  return out.str();
}

std::string export_dot(const TwoComplex& c) {
  const Graph& g = c.skeleton();
  const auto sides = sides_by_edge(c);
  std::ostringstream out;
  out << "digraph complex {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "  \"" << g.vertex_name(v) << '"';
    if (c.base() && *c.base() == v) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << "  \"" << g.vertex_name(edge.tail) << "\" -> \"" << g.vertex_name(edge.head)
        << "\" [label=\"" << edge.name;
    if (!edge.label.empty()) out << ':' << edge.label;
    out << " (" << sides[e].size() << ")\"];\n";
  }
  for (const Cell& cell : c.cells())
    out << "  // cell " << cell.name << " : " << format_path(g, cell.boundary) << '\n';
  out << "}\n";
  return out.str();
}

}  // namespace orelco
