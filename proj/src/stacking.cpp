#include "orelco/stacking.hpp"

#include <map>
#include <sstream>

#include "orelco/complex_io.hpp"
#include "orelco/error.hpp"
#include "orelco/text.hpp"

namespace orelco {

namespace {

Rational parse_rational(const std::string& token, std::size_t line) {
  const std::size_t slash = token.find('/');
  try {
    if (slash == std::string::npos) return Rational(parse_int(token, "height"));
    const std::int64_t den = parse_int(token.substr(slash + 1), "height");
    if (den == 0) parse_fail(line, "zero denominator in height");
    return Rational(parse_int(token.substr(0, slash), "height"), den);
  } catch (const Error& e) {
    if (e.reason() == "bad_number") parse_fail(line, "bad height '" + token + "'");
    throw;
  }
}

std::string position_name(const TwoComplex& c, CellId k, std::uint32_t p) {
  return c.cell(k).name + ":" + std::to_string(p);
}

}  // namespace

Stacking parse_stacking(std::string_view text) {
  ParsedComplex parsed = parse_complex_text(text, true);
  Stacking s;
  s.complex = share(std::move(parsed.complex));
  const TwoComplex& c = *s.complex;
  const NameIndex names(c);
  s.heights.resize(c.cell_count());
  for (CellId k = 0; k < c.cell_count(); ++k) s.heights[k].resize(c.cell(k).boundary.size());
  for (const ExtraLine& x : parsed.extras) {
    if (x.tokens.front() != "h") parse_fail(x.line, "unknown directive '" + x.tokens.front() + "'");
    if (x.tokens.size() != 4) parse_fail(x.line, "expected 'h <cell> <position> <height>'");
    const CellId k = names.cell(x.tokens[1], x.line);
    const std::uint64_t p = parse_uint(x.tokens[2], "position");
    if (p >= s.heights[k].size()) parse_fail(x.line, "position out of range");
    if (s.heights[k][p]) parse_fail(x.line, "duplicate height");
    s.heights[k][p] = parse_rational(x.tokens[3], x.line);
  }
  for (CellId k = 0; k < c.cell_count(); ++k)
    for (std::uint32_t p = 0; p < s.heights[k].size(); ++p)
      if (!s.heights[k][p])
        throw Error(ErrorKind::invalid_input, "missing_height", position_name(c, k, p));
  return s;
}

std::string format_stacking(const Stacking& s) {
  std::ostringstream out;
  out << format_complex(*s.complex);
  for (CellId k = 0; k < s.heights.size(); ++k)
    for (std::uint32_t p = 0; p < s.heights[k].size(); ++p)
      if (s.heights[k][p]) {
        const Rational& h = *s.heights[k][p];
        out << "h " << s.complex->cell(k).name << ' ' << p << ' ' << h.numerator();
        if (h.denominator() != 1) out << '/' << h.denominator();
        out << '\n';
      }
  return out.str();
}

std::string_view to_string(StackingVerdict v) {
  switch (v) {
    case StackingVerdict::good: return "good";
    case StackingVerdict::not_good: return "not_good";
    case StackingVerdict::not_embedding: return "not_embedding";
  }
  return "?";
}

StackingReport check_good_stacking(const Stacking& s) {
  const TwoComplex& c = *s.complex;
  StackingReport r;
  // extreme heights over each edge
  std::vector<std::optional<Rational>> top(c.edge_count());
  std::vector<std::optional<Rational>> bottom(c.edge_count());
  std::vector<std::map<Rational, Side>> seen(c.edge_count());
  for (CellId k = 0; k < c.cell_count(); ++k) {
    const std::vector<DartId>& bd = c.cell(k).boundary;
    for (std::uint32_t p = 0; p < bd.size(); ++p) {
      if (!s.heights[k][p])
        throw Error(ErrorKind::invalid_input, "missing_height", position_name(c, k, p));
      const Rational h = *s.heights[k][p];
      const EdgeId e = edge_of(bd[p]);
      const auto [it, fresh] = seen[e].emplace(h, Side{k, p});
      if (!fresh) {
        r.verdict = StackingVerdict::not_embedding;
        r.witness = position_name(c, it->second.cell, it->second.position) + " and " +
                    position_name(c, k, p) + " share a height over edge " +
                    c.skeleton().edge(e).name;
        return r;
      }
      if (!top[e] || h > *top[e]) top[e] = h;
      if (!bottom[e] || h < *bottom[e]) bottom[e] = h;
    }
  }
  for (CellId k = 0; k < c.cell_count(); ++k) {
    const std::vector<DartId>& bd = c.cell(k).boundary;
    bool has_top = false;
    bool has_bottom = false;
    for (std::uint32_t p = 0; p < bd.size(); ++p) {
      const EdgeId e = edge_of(bd[p]);
      has_top = has_top || *s.heights[k][p] == *top[e];
      has_bottom = has_bottom || *s.heights[k][p] == *bottom[e];
    }
    if (!has_top || !has_bottom) {
      r.verdict = StackingVerdict::not_good;
      r.witness = c.cell(k).name + (has_top ? " has no lowest point" : " has no highest point");
      return r;
    }
  }
  r.verdict = StackingVerdict::good;
  return r;
}

bool branched_good_stacking(const StackingReport& r, std::uint32_t branch) {
  return r.verdict == StackingVerdict::good && branch >= 2;
}

}  // namespace orelco
