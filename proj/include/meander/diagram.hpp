#pragma once

// (r, 2s-1)-meander link diagrams.
//
// Cabling replaces the axis by r horizontal lines (axis copies, numbered
// bottom to top) and every vertical passage of the meander curve by r
// parallel strands (meander copies, numbered left to right). Vertex i of the
// skeleton becomes an r x r grid of crossings (i, p, q): meander copy p
// crossing axis copy q. Parallel arcs are concentric, so copy p at one end of
// an arc lands on copy r+1-p at the other end; at the axis ends the line q
// turns into the vertical copy r+1-q.
//
// The planar map has a rotation system with ports East, North, West, South
// in counterclockwise order at every crossing. A crossing letter says whether
// the meander (vertical) strand passes Over or Under the axis (horizontal)
// strand. Letters are stored word-major: word p holds meander copy p, and
// within a word the letter for (vertex i, axis copy q) is at (i-1) r + (q-1).
// The crossing index used throughout equals that flat letter index.

#include "meander/graph.hpp"
#include "meander/random.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meander {

enum class Sense : std::uint8_t { Over, Under };

inline char to_char(Sense s) { return s == Sense::Over ? 'O' : 'U'; }
inline Sense flip(Sense s) { return s == Sense::Over ? Sense::Under : Sense::Over; }

enum class Port : std::uint8_t { East = 0, North = 1, West = 2, South = 3 };

inline constexpr Port opposite(Port p) { return static_cast<Port>((static_cast<unsigned>(p) + 2) % 4); }
inline constexpr Port ccw_next(Port p) { return static_cast<Port>((static_cast<unsigned>(p) + 1) % 4); }
inline constexpr bool is_vertical(Port p) { return p == Port::North || p == Port::South; }

struct Crossing {
  unsigned vertex = 0;        // 1..2s-1
  unsigned meander_copy = 0;  // 1..r
  unsigned axis_copy = 0;     // 1..r
};

/// Half-edge leaving `crossing` through `port`.
struct Dart {
  std::uint32_t crossing = 0;
  Port port = Port::East;

  bool operator==(const Dart&) const = default;
};

/// A strand passing through a crossing, entering through `in`.
struct Pass {
  std::uint32_t crossing = 0;
  Port in = Port::West;

  Port out() const { return opposite(in); }
  bool vertical() const { return is_vertical(in); }
};

struct Face {
  std::vector<Dart> corners;
  bool unbounded = false;
};

struct LinkComponent {
  unsigned id = 0;  // 1-based
  bool axis = false;
  std::size_t base_cycle = 0;
  unsigned copy = 0;  // 1..r
  std::vector<Pass> passes;
};

/// Crossing structure and planar embedding of a cabled meander graph. Holds
/// no crossing information, so one projection serves every assignment.
class CabledProjection {
 public:
  CabledProjection(MeanderGraph skeleton, unsigned r) : skeleton_(std::move(skeleton)), r_(r) {
    if (r_ == 0) throw std::invalid_argument("cabling: r must be at least 1");
    const unsigned v = skeleton_.vertex_count();
    crossings_.resize(std::size_t{v} * r_ * r_);
    for (unsigned p = 1; p <= r_; ++p) {
      for (unsigned i = 1; i <= v; ++i) {
        for (unsigned q = 1; q <= r_; ++q) crossings_[index(i, p, q)] = Crossing{i, p, q};
      }
    }
    build_neighbors();
    build_faces();
    build_components();
  }

  const MeanderGraph& skeleton() const noexcept { return skeleton_; }
  unsigned pairs() const noexcept { return skeleton_.pairs(); }
  unsigned cabling() const noexcept { return r_; }

  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  const Crossing& crossing(std::size_t c) const { return crossings_.at(c); }

  std::uint32_t index(unsigned vertex, unsigned meander_copy, unsigned axis_copy) const {
    const unsigned v = skeleton_.vertex_count();
    return static_cast<std::uint32_t>((std::size_t{meander_copy - 1} * v + (vertex - 1)) * r_ + (axis_copy - 1));
  }

  /// The dart at the far end of the edge that leaves through `d`.
  Dart neighbor(Dart d) const { return neighbors_[slot(d)]; }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  const std::vector<LinkComponent>& components() const noexcept { return components_; }
  const ComponentStructure& base_components() const noexcept { return base_; }

  /// (component index, pass index) of the two strands through crossing c;
  /// element 0 is the horizontal strand, element 1 the vertical one.
  const std::array<std::pair<std::uint32_t, std::uint32_t>, 2>& strands_at(std::size_t c) const {
    return strands_.at(c);
  }

  /// Label of the edge at a port in traversal numbering (1..2c).
  unsigned edge_label(Dart d) const { return edge_labels_[slot(d)]; }

 private:
  static std::size_t slot(Dart d) { return std::size_t{d.crossing} * 4 + static_cast<unsigned>(d.port); }

  void build_neighbors() {
    const unsigned v = skeleton_.vertex_count();
    const unsigned end = skeleton_.axis_end();
    neighbors_.resize(crossings_.size() * 4);
    for (std::uint32_t c = 0; c < crossings_.size(); ++c) {
      const auto [i, p, q] = crossings_[c];
      auto at = [&](unsigned vi, unsigned pi, unsigned qi, Port port) { return Dart{index(vi, pi, qi), port}; };

      // East along axis copy q
      if (p < r_) {
        neighbors_[slot({c, Port::East})] = at(i, p + 1, q, Port::West);
      } else if (i < v) {
        neighbors_[slot({c, Port::East})] = at(i + 1, 1, q, Port::West);
      } else {
        const unsigned k = skeleton_.top_partner(end);
        neighbors_[slot({c, Port::East})] = at(k, q, r_, Port::North);
      }
      // West
      if (p > 1) {
        neighbors_[slot({c, Port::West})] = at(i, p - 1, q, Port::East);
      } else if (i > 1) {
        neighbors_[slot({c, Port::West})] = at(i - 1, r_, q, Port::East);
      } else {
        const unsigned j = skeleton_.bottom_partner(0);
        neighbors_[slot({c, Port::West})] = at(j, q, 1, Port::South);
      }
      // North, into the upper arc once past the top line
      if (q < r_) {
        neighbors_[slot({c, Port::North})] = at(i, p, q + 1, Port::South);
      } else {
        const unsigned j = skeleton_.top_partner(i);
        neighbors_[slot({c, Port::North})] =
            j < end ? at(j, r_ + 1 - p, r_, Port::North) : at(v, r_, p, Port::East);
      }
      // South
      if (q > 1) {
        neighbors_[slot({c, Port::South})] = at(i, p, q - 1, Port::North);
      } else {
        const unsigned j = skeleton_.bottom_partner(i);
        neighbors_[slot({c, Port::South})] = j > 0 ? at(j, r_ + 1 - p, 1, Port::South) : at(1, 1, p, Port::West);
      }
    }
  }

  void build_faces() {
    std::vector<bool> used(neighbors_.size(), false);
    const Dart outer{index(1, 1, r_), Port::West};
    for (std::uint32_t c = 0; c < crossings_.size(); ++c) {
      for (unsigned port = 0; port < 4; ++port) {
        Dart d{c, static_cast<Port>(port)};
        if (used[slot(d)]) continue;
        Face face;
        // keep the face on the right: turn to the next port counterclockwise
        // from the one we arrived through
        while (!used[slot(d)]) {
          used[slot(d)] = true;
          face.corners.push_back(d);
          if (d == outer) face.unbounded = true;
          const Dart arrival = neighbors_[slot(d)];
          d = Dart{arrival.crossing, ccw_next(arrival.port)};
        }
        faces_.push_back(std::move(face));
      }
    }
  }

  void build_components() {
    base_ = meander::components(skeleton_);
    strands_.assign(crossings_.size(), {});
    edge_labels_.assign(neighbors_.size(), 0);
    std::vector<std::uint8_t> visits(crossings_.size(), 0);
    unsigned next_label = 1;

    for (std::size_t b = 0; b < base_.cycles.size(); ++b) {
      const bool axis = b == base_.axis_index;
      for (unsigned copy = 1; copy <= r_; ++copy) {
        LinkComponent comp;
        comp.id = static_cast<unsigned>(components_.size() + 1);
        comp.axis = axis;
        comp.base_cycle = b;
        comp.copy = copy;
        // axis copies run left to right from point 0; circles leave their
        // lowest point upwards
        const Dart start = axis ? Dart{index(1, 1, copy), Port::East}
                                : Dart{index(base_.cycles[b].front(), copy, r_), Port::North};
        Pass pass{start.crossing, opposite(start.port)};
        do {
          comp.passes.push_back(pass);
          const Dart arrival = neighbors_[slot({pass.crossing, pass.out()})];
          pass = Pass{arrival.crossing, arrival.port};
        } while (!(pass.crossing == start.crossing && pass.in == opposite(start.port)));

        const auto ci = static_cast<std::uint32_t>(components_.size());
        const std::size_t m = comp.passes.size();
        for (std::size_t k = 0; k < m; ++k) {
          const Pass& ps = comp.passes[k];
          strands_[ps.crossing][ps.vertical() ? 1 : 0] = {ci, static_cast<std::uint32_t>(k)};
          ++visits[ps.crossing];
          // the edge entering pass k is labelled next_label + k
          edge_labels_[slot({ps.crossing, ps.in})] = next_label + static_cast<unsigned>(k);
          edge_labels_[slot({ps.crossing, ps.out()})] = next_label + static_cast<unsigned>((k + 1) % m);
        }
        next_label += static_cast<unsigned>(m);
        components_.push_back(std::move(comp));
      }
    }
    for (std::uint8_t n : visits) {
      if (n != 2) throw std::logic_error("cabling: a crossing is not visited by exactly two strands");
    }
  }

  MeanderGraph skeleton_;
  unsigned r_;
  std::vector<Crossing> crossings_;
  std::vector<Dart> neighbors_;
  std::vector<Face> faces_;
  ComponentStructure base_;
  std::vector<LinkComponent> components_;
  std::vector<std::array<std::pair<std::uint32_t, std::uint32_t>, 2>> strands_;
  std::vector<unsigned> edge_labels_;
};

/// r words of r(2s-1) letters.
class CrossingAssignment {
 public:
  CrossingAssignment() = default;

  CrossingAssignment(unsigned s, unsigned r, std::vector<Sense> letters)
      : s_(s), r_(r), letters_(std::move(letters)) {
    if (s_ == 0 || r_ == 0) throw std::invalid_argument("crossing assignment: s and r must be at least 1");
    if (letters_.size() != std::size_t{r_} * r_ * (2 * s_ - 1)) {
      throw std::invalid_argument("crossing assignment: expected " + std::to_string(std::size_t{r_} * r_ * (2 * s_ - 1)) +
                                  " letters, got " + std::to_string(letters_.size()));
    }
  }

  static CrossingAssignment from_words(unsigned s, unsigned r, const std::vector<std::string>& words) {
    if (words.size() != r) {
      throw std::invalid_argument("crossing assignment: expected " + std::to_string(r) + " words, got " +
                                  std::to_string(words.size()));
    }
    std::vector<Sense> letters;
    for (const std::string& w : words) {
      if (w.size() != std::size_t{r} * (2 * s - 1)) {
        throw std::invalid_argument("crossing assignment: word '" + w + "' should have " +
                                    std::to_string(std::size_t{r} * (2 * s - 1)) + " letters");
      }
      for (char ch : w) {
        if (ch == 'O') {
          letters.push_back(Sense::Over);
        } else if (ch == 'U') {
          letters.push_back(Sense::Under);
        } else {
          throw std::invalid_argument(std::string("crossing assignment: illegal letter '") + ch + "'");
        }
      }
    }
    return CrossingAssignment(s, r, std::move(letters));
  }

  unsigned pairs() const noexcept { return s_; }
  unsigned cabling() const noexcept { return r_; }
  std::size_t word_length() const noexcept { return std::size_t{r_} * (2 * s_ - 1); }
  std::size_t size() const noexcept { return letters_.size(); }

  Sense letter(std::size_t flat) const { return letters_.at(flat); }
  /// `word` and `position` are 1-based.
  Sense at(unsigned word, std::size_t position) const { return letters_.at((word - 1) * word_length() + position - 1); }

  std::vector<std::string> words() const {
    std::vector<std::string> out(r_);
    for (unsigned w = 0; w < r_; ++w) {
      out[w].reserve(word_length());
      for (std::size_t k = 0; k < word_length(); ++k) out[w].push_back(to_char(letters_[w * word_length() + k]));
    }
    return out;
  }

  CrossingAssignment complement() const {
    std::vector<Sense> flipped(letters_.size());
    for (std::size_t k = 0; k < letters_.size(); ++k) flipped[k] = flip(letters_[k]);
    return CrossingAssignment(s_, r_, std::move(flipped));
  }

  bool operator==(const CrossingAssignment&) const = default;

 private:
  unsigned s_ = 0;
  unsigned r_ = 0;
  std::vector<Sense> letters_;
};

/// Independent fair letters, 64 per engine draw.
inline CrossingAssignment sample_assignment(unsigned s, unsigned r, Engine& engine) {
  if (s == 0 || r == 0) throw std::invalid_argument("sample_assignment: s and r must be at least 1");
  const std::size_t n = std::size_t{r} * r * (2 * s - 1);
  std::vector<Sense> letters(n);
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 64 == 0) bits = engine();
    letters[k] = (bits & 1) ? Sense::Under : Sense::Over;
    bits >>= 1;
  }
  return CrossingAssignment(s, r, std::move(letters));
}

class LinkDiagram {
 public:
  LinkDiagram(std::shared_ptr<const CabledProjection> projection, CrossingAssignment assignment)
      : projection_(std::move(projection)), assignment_(std::move(assignment)) {
    if (assignment_.pairs() != projection_->pairs() || assignment_.cabling() != projection_->cabling()) {
      throw std::invalid_argument("assemble: crossing assignment is for (s=" + std::to_string(assignment_.pairs()) +
                                  ", r=" + std::to_string(assignment_.cabling()) + "), graph needs (s=" +
                                  std::to_string(projection_->pairs()) + ", r=" +
                                  std::to_string(projection_->cabling()) + ")");
    }
  }

  const CabledProjection& projection() const noexcept { return *projection_; }
  const MeanderGraph& skeleton() const noexcept { return projection_->skeleton(); }
  const CrossingAssignment& assignment() const noexcept { return assignment_; }
  unsigned pairs() const noexcept { return projection_->pairs(); }
  unsigned cabling() const noexcept { return projection_->cabling(); }
  std::size_t crossing_count() const noexcept { return projection_->crossing_count(); }
  const std::vector<LinkComponent>& components() const noexcept { return projection_->components(); }

  Sense sense(std::size_t crossing) const { return assignment_.letter(crossing); }

  /// Whether the strand making this pass goes over.
  bool over(const Pass& pass) const {
    const Sense s = sense(pass.crossing);
    return pass.vertical() ? s == Sense::Over : s == Sense::Under;
  }

  /// Same projection, different crossing information.
  LinkDiagram with_assignment(CrossingAssignment assignment) const { return LinkDiagram(projection_, std::move(assignment)); }

 private:
  std::shared_ptr<const CabledProjection> projection_;
  CrossingAssignment assignment_;
};

inline LinkDiagram assemble(const MeanderGraph& g, unsigned r, CrossingAssignment v) {
  if (v.pairs() != g.pairs() || v.cabling() != r) {
    throw std::invalid_argument("assemble: crossing assignment does not match (s=" + std::to_string(g.pairs()) +
                                ", r=" + std::to_string(r) + ")");
  }
  return LinkDiagram(std::make_shared<const CabledProjection>(g, r), std::move(v));
}

// Alternation -------------------------------------------------------------------

namespace detail {

/// Letter bit (1 = Over) for an alternating assignment with crossing 0 Over.
/// Along a strand, over = bit xor horizontal, and consecutive passes must
/// differ, which fixes every bit relative to its neighbours.
inline std::vector<Sense> alternating_letters(const CabledProjection& proj) {
  const std::size_t n = proj.crossing_count();
  std::vector<int> bit(n, -1);
  // constraints: bit[a] ^ bit[b] == parity
  std::vector<std::vector<std::pair<std::uint32_t, int>>> adj(n);
  for (const LinkComponent& comp : proj.components()) {
    const std::size_t m = comp.passes.size();
    for (std::size_t k = 0; k < m; ++k) {
      const Pass& a = comp.passes[k];
      const Pass& b = comp.passes[(k + 1) % m];
      const int parity = 1 ^ (a.vertical() ? 0 : 1) ^ (b.vertical() ? 0 : 1);
      adj[a.crossing].push_back({b.crossing, parity});
      adj[b.crossing].push_back({a.crossing, parity});
    }
  }
  std::vector<std::uint32_t> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (bit[root] != -1) continue;
    bit[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const std::uint32_t c = stack.back();
      stack.pop_back();
      for (auto [other, parity] : adj[c]) {
        const int want = bit[c] ^ parity;
        if (bit[other] == -1) {
          bit[other] = want;
          stack.push_back(other);
        } else if (bit[other] != want) {
          throw std::logic_error("alternating assignment: inconsistent constraints (projection is not planar)");
        }
      }
    }
  }
  std::vector<Sense> letters(n);
  for (std::size_t c = 0; c < n; ++c) letters[c] = bit[c] ? Sense::Over : Sense::Under;
  return letters;
}

}  // namespace detail

/// The two alternating assignments; the first has crossing (1, 1, 1) Over and
/// the second is its complement.
inline std::pair<CrossingAssignment, CrossingAssignment> alternating_assignments(const MeanderGraph& g, unsigned r) {
  const CabledProjection proj(g, r);
  CrossingAssignment first(g.pairs(), r, detail::alternating_letters(proj));
  CrossingAssignment second = first.complement();
  return {std::move(first), std::move(second)};
}

inline bool verify_alternating(const LinkDiagram& d) {
  for (const LinkComponent& comp : d.components()) {
    const std::size_t m = comp.passes.size();
    for (std::size_t k = 0; k < m; ++k) {
      if (d.over(comp.passes[k]) == d.over(comp.passes[(k + 1) % m])) return false;
    }
  }
  return true;
}

// Statistics ------------------------------------------------------------------

struct DiagramStats {
  std::vector<unsigned> pierced_circle_positions;
  std::size_t crossings = 0;
  std::size_t faces = 0;
  unsigned bigons = 0;          // bounded faces with two corners
  unsigned monogons = 0;        // faces with one corner
  unsigned outer_corners = 0;   // corners of the unbounded face
  unsigned nesting_bigons = 0;  // nestings of both strings
  std::int64_t twists = 0;      // crossings - nesting_bigons
  unsigned nugatory = 0;        // extreme nestings
  std::size_t components = 0;
  std::size_t axis_components = 0;
};

inline DiagramStats diagram_stats(const LinkDiagram& d) {
  const CabledProjection& proj = d.projection();
  DiagramStats st;
  st.pierced_circle_positions = pierced_circles(proj.skeleton());
  st.crossings = proj.crossing_count();
  st.faces = proj.faces().size();
  for (const Face& f : proj.faces()) {
    if (f.unbounded) {
      st.outer_corners = static_cast<unsigned>(f.corners.size());
      continue;
    }
    if (f.corners.size() == 2) ++st.bigons;
  }
  for (const Face& f : proj.faces()) {
    if (f.corners.size() == 1) ++st.monogons;
  }
  st.nesting_bigons = nesting_bigons(proj.skeleton());
  st.twists = static_cast<std::int64_t>(st.crossings) - st.nesting_bigons;
  st.nugatory = nugatory_nestings(proj.skeleton());
  st.components = proj.components().size();
  for (const LinkComponent& c : proj.components()) st.axis_components += c.axis ? 1 : 0;
  return st;
}

/// V - E + F of the projection; 2 for a connected planar 4-valent map.
inline long euler_characteristic(const CabledProjection& proj) {
  const auto v = static_cast<long>(proj.crossing_count());
  return v - 2 * v + static_cast<long>(proj.faces().size());
}

/// Twist regions as classes of crossings chained by two-cornered faces,
/// counting the unbounded face as well.
inline std::size_t twist_regions_by_chains(const LinkDiagram& d) {
  const CabledProjection& proj = d.projection();
  std::vector<std::size_t> parent(proj.crossing_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t classes = parent.size();
  for (const Face& f : proj.faces()) {
    if (f.corners.size() != 2) continue;
    const std::size_t a = find(f.corners[0].crossing);
    const std::size_t b = find(f.corners[1].crossing);
    if (a != b) {
      parent[a] = b;
      --classes;
    }
  }
  return classes;
}

/// True when the given copy of a pierced circle passes the same way at both of
/// its crossings with axis copy `axis_copy`.
inline bool circle_axis_unlinked(const LinkDiagram& d, unsigned component_id, unsigned axis_copy) {
  const auto& comps = d.components();
  if (component_id == 0 || component_id > comps.size()) {
    throw std::invalid_argument("circle_axis_unlinked: no component " + std::to_string(component_id));
  }
  if (axis_copy == 0 || axis_copy > d.cabling()) {
    throw std::invalid_argument("circle_axis_unlinked: no axis copy " + std::to_string(axis_copy));
  }
  const LinkComponent& comp = comps[component_id - 1];
  if (comp.axis) throw std::invalid_argument("circle_axis_unlinked: component is part of the axis");
  std::vector<Sense> senses;
  for (const Pass& p : comp.passes) {
    if (d.projection().crossing(p.crossing).axis_copy == axis_copy) senses.push_back(d.sense(p.crossing));
  }
  if (senses.size() != 2) {
    throw std::invalid_argument("circle_axis_unlinked: component " + std::to_string(component_id) + " crosses axis copy " +
                                std::to_string(axis_copy) + " " + std::to_string(senses.size()) +
                                " times; not a pierced circle");
  }
  return senses[0] == senses[1];
}

/// Component ids of the r copies of the circle at a pierced-circle position.
inline std::vector<unsigned> circle_copies_at(const CabledProjection& proj, unsigned position) {
  std::vector<unsigned> ids;
  for (const LinkComponent& c : proj.components()) {
    if (!c.axis && proj.base_components().cycles[c.base_cycle].front() == position) ids.push_back(c.id);
  }
  return ids;
}

}  // namespace meander
