#pragma once

// Plain-text formats for complexes and morphisms.
//
//   vertex <id>
//   edge <id> : <v> -> <v> [label <sym>]
//   cell <id> : <edge> <edge>~ ...
//   base <v>
//
//   vmap <id> <id>
//   emap <id> <id>[~]
//   cmap <id> <id> rot=<k> orient=<+|->

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orelco/complex.hpp"

namespace orelco {

/// A directive the complex grammar did not recognise, kept for extension formats.
struct ExtraLine {
  std::size_t line = 0;
  std::vector<std::string> tokens;
};

struct ParsedComplex {
  TwoComplex complex;
  std::vector<ExtraLine> extras;
};

/// With allow_extras = false any unknown directive is a parse error.
ParsedComplex parse_complex_text(std::string_view text, bool allow_extras);
TwoComplex parse_complex(std::string_view text);
std::string format_complex(const TwoComplex& c);

/// Name lookup tables for a parsed or constructed complex.
struct NameIndex {
  std::unordered_map<std::string, VertexId> vertices;
  std::unordered_map<std::string, EdgeId> edges;
  std::unordered_map<std::string, CellId> cells;

  explicit NameIndex(const TwoComplex& c);
  /// "e" -> forward dart of e, "e~" -> reverse dart.
  DartId dart(std::string_view token, std::size_t line) const;
  VertexId vertex(std::string_view token, std::size_t line) const;
  EdgeId edge(std::string_view token, std::size_t line) const;
  CellId cell(std::string_view token, std::size_t line) const;
};

std::string format_dart(const Graph& g, DartId d);
std::string format_path(const Graph& g, const std::vector<DartId>& path);

CellMorphism parse_morphism(std::string_view text, ComplexRef source, ComplexRef target);
std::string format_morphism(const CellMorphism& m);

/// Graphviz rendering of the 1-skeleton; each edge carries its label and side count.
std::string export_dot(const TwoComplex& c);

}  // namespace orelco
