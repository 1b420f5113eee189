#pragma once

// Text encodings of link diagrams: PD codes, signed Gauss codes and JSON.

#include "meander/diagram.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace meander {

using PdCrossing = std::array<unsigned, 4>;

/// X[a,b,c,d] per crossing in crossing-index order: a is the incoming
/// under-strand edge, then b, c, d counterclockwise.
inline std::vector<PdCrossing> pd_code(const LinkDiagram& d) {
  const CabledProjection& proj = d.projection();
  std::vector<PdCrossing> out(proj.crossing_count());
  for (std::uint32_t c = 0; c < proj.crossing_count(); ++c) {
    const auto& strands = proj.strands_at(c);
    // Over means the vertical (meander) strand is on top, so the horizontal one is under.
    const std::size_t under = d.sense(c) == Sense::Over ? 0 : 1;
    const auto [comp, k] = strands[under];
    Port port = proj.components()[comp].passes[k].in;
    for (unsigned slot = 0; slot < 4; ++slot) {
      out[c][slot] = proj.edge_label(Dart{c, port});
      port = ccw_next(port);
    }
  }
  return out;
}

inline std::string format_pd(const std::vector<PdCrossing>& pd) {
  std::string text = "PD[";
  for (std::size_t i = 0; i < pd.size(); ++i) {
    if (i) text += ',';
    text += "X[" + std::to_string(pd[i][0]) + ',' + std::to_string(pd[i][1]) + ',' + std::to_string(pd[i][2]) + ',' +
            std::to_string(pd[i][3]) + ']';
  }
  text += ']';
  return text;
}

inline std::string export_pd(const LinkDiagram& d) { return format_pd(pd_code(d)); }

/// Reads `PD[X[a,b,c,d],...]`; whitespace anywhere is ignored.
inline std::vector<PdCrossing> parse_pd(std::string_view text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  std::size_t pos = 0;
  auto expect = [&](std::string_view token) {
    if (t.compare(pos, token.size(), token) != 0) {
      throw std::invalid_argument("parse_pd: expected '" + std::string(token) + "' at offset " + std::to_string(pos));
    }
    pos += token.size();
  };
  auto number = [&] {
    const std::size_t begin = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (begin == pos) throw std::invalid_argument("parse_pd: expected a label at offset " + std::to_string(begin));
    return static_cast<unsigned>(std::stoul(t.substr(begin, pos - begin)));
  };
  std::vector<PdCrossing> pd;
  expect("PD[");
  if (pos < t.size() && t[pos] != ']') {
    for (;;) {
      expect("X[");
      PdCrossing x{};
      for (unsigned i = 0; i < 4; ++i) {
        if (i) expect(",");
        x[i] = number();
      }
      expect("]");
      pd.push_back(x);
      if (pos < t.size() && t[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  expect("]");
  if (pos != t.size()) throw std::invalid_argument("parse_pd: trailing characters");
  return pd;
}

// Gauss code ----------------------------------------------------------------------

struct GaussEntry {
  bool over = false;
  unsigned crossing = 0;  // 1-based, numbered by first appearance
  int sign = 0;           // +1 or -1
};

namespace detail {

inline std::array<int, 2> direction(Port travel) {
  switch (travel) {
    case Port::East:
      return {1, 0};
    case Port::North:
      return {0, 1};
    case Port::West:
      return {-1, 0};
    case Port::South:
      return {0, -1};
  }
  return {0, 0};
}

}  // namespace detail

/// Right-handed crossing sign: positive when the under strand crosses the
/// over strand from right to left.
inline int crossing_sign(const LinkDiagram& d, std::uint32_t c) {
  const CabledProjection& proj = d.projection();
  const auto& strands = proj.strands_at(c);
  const std::size_t over = d.sense(c) == Sense::Over ? 1 : 0;
  const auto& comps = proj.components();
  const auto o = detail::direction(comps[strands[over].first].passes[strands[over].second].out());
  const auto u = detail::direction(comps[strands[1 - over].first].passes[strands[1 - over].second].out());
  return o[0] * u[1] - o[1] * u[0] > 0 ? 1 : -1;
}

inline std::vector<GaussEntry> gauss_code(const LinkDiagram& d) {
  if (d.components().size() != 1) {
    throw std::invalid_argument("export_gauss: diagram has " + std::to_string(d.components().size()) +
                                " components; Gauss codes need a knot");
  }
  std::map<std::uint32_t, unsigned> number;
  std::vector<GaussEntry> code;
  for (const Pass& p : d.components().front().passes) {
    auto [it, inserted] = number.try_emplace(p.crossing, static_cast<unsigned>(number.size() + 1));
    code.push_back(GaussEntry{d.over(p), it->second, crossing_sign(d, p.crossing)});
  }
  return code;
}

inline std::string export_gauss(const LinkDiagram& d) {
  std::string text;
  for (const GaussEntry& e : gauss_code(d)) {
    if (!text.empty()) text += ',';
    text += e.over ? 'O' : 'U';
    text += std::to_string(e.crossing);
    text += e.sign > 0 ? '+' : '-';
  }
  return text;
}

// JSON ----------------------------------------------------------------------------

inline nlohmann::json to_json(const LinkDiagram& d) {
  nlohmann::json j;
  j["s"] = d.pairs();
  j["r"] = d.cabling();
  j["top"] = d.skeleton().top().text();
  j["bottom"] = d.skeleton().bottom().text();
  j["crossing_info"] = d.assignment().words();
  j["components"] = d.components().size();
  std::vector<unsigned> axis;
  for (const LinkComponent& c : d.components()) {
    if (c.axis) axis.push_back(c.id);
  }
  j["axis_components"] = axis;
  j["pierced_circles"] = pierced_circles(d.skeleton());
  j["pd"] = pd_code(d);
  return j;
}

inline std::string export_json(const LinkDiagram& d) { return to_json(d).dump(); }

/// Rebuilds a diagram from its JSON record and checks the derived fields.
inline LinkDiagram diagram_from_json(const nlohmann::json& j) {
  const auto s = j.at("s").get<unsigned>();
  const auto r = j.at("r").get<unsigned>();
  const MeanderGraph g(PString::parse(j.at("top").get<std::string>()), PString::parse(j.at("bottom").get<std::string>()));
  if (g.pairs() != s) throw std::invalid_argument("diagram json: 's' does not match the p-strings");
  LinkDiagram d = assemble(g, r, CrossingAssignment::from_words(s, r, j.at("crossing_info").get<std::vector<std::string>>()));
  const nlohmann::json derived = to_json(d);
  for (const char* key : {"components", "axis_components", "pierced_circles", "pd"}) {
    if (j.contains(key) && j.at(key) != derived.at(key)) {
      throw std::invalid_argument(std::string("diagram json: field '") + key + "' disagrees with the diagram");
    }
  }
  return d;
}

inline LinkDiagram parse_json(std::string_view text) { return diagram_from_json(nlohmann::json::parse(text)); }

}  // namespace meander
