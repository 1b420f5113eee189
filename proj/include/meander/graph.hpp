#pragma once

// Meander graphs built from two p-strings.
//
// Axis points are 0..2s. The top string's character j sits at point j
// (points 1..2s) and the bottom string's character j at point j-1
// (points 0..2s-1). The axis runs from point 0 to point 2s; the interior
// points 1..2s-1 are the 2s-1 vertices. With this layout a pierced circle at
// position i is a top nesting at i together with a bottom nesting at i+1,
// and a nugatory crossing comes from a bottom nesting at 1 or a top nesting
// at 2s-1.

#include "meander/pstring.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace meander {

class MeanderGraph {
 public:
  static constexpr unsigned kNone = static_cast<unsigned>(-1);

  MeanderGraph(PString top, PString bottom) : top_(std::move(top)), bottom_(std::move(bottom)) {
    if (top_.pairs() != bottom_.pairs()) {
      throw std::invalid_argument("build_graph: top has " + std::to_string(top_.pairs()) + " pairs, bottom has " +
                                  std::to_string(bottom_.pairs()));
    }
    if (top_.pairs() == 0) throw std::invalid_argument("build_graph: at least one pair is required");
    const unsigned s = pairs();
    top_partner_ = match(top_, 0, 2 * s + 1);
    bottom_partner_ = match(bottom_, 1, 2 * s + 1);
  }

  unsigned pairs() const noexcept { return top_.pairs(); }
  unsigned vertex_count() const noexcept { return 2 * pairs() - 1; }
  /// Point where the axis ends on the right; the left end is point 0.
  unsigned axis_end() const noexcept { return 2 * pairs(); }

  const PString& top() const noexcept { return top_; }
  const PString& bottom() const noexcept { return bottom_; }

  /// Partner of `point` in the upper arc system, or kNone for point 0.
  unsigned top_partner(unsigned point) const { return top_partner_.at(point); }
  /// Partner of `point` in the lower arc system, or kNone for point 2s.
  unsigned bottom_partner(unsigned point) const { return bottom_partner_.at(point); }

  bool operator==(const MeanderGraph& other) const { return top_ == other.top_ && bottom_ == other.bottom_; }

 private:
  static std::vector<unsigned> match(const PString& p, unsigned shift, std::size_t points) {
    std::vector<unsigned> partner(points, kNone);
    std::vector<unsigned> open;
    const std::string& w = p.text();
    for (unsigned j = 1; j <= w.size(); ++j) {
      if (w[j - 1] == '(') {
        open.push_back(j - shift);
      } else {
        const unsigned a = open.back();
        open.pop_back();
        partner[a] = j - shift;
        partner[j - shift] = a;
      }
    }
    return partner;
  }

  PString top_;
  PString bottom_;
  std::vector<unsigned> top_partner_;
  std::vector<unsigned> bottom_partner_;
};

inline MeanderGraph build_graph(const PString& top, const PString& bottom) { return MeanderGraph(top, bottom); }

/// Positions i of pierced circles: vertices i and i+1 joined above and below.
inline std::vector<unsigned> pierced_circles(const MeanderGraph& g) {
  const NestingSet top = nestings(g.top());
  const NestingSet bottom = nestings(g.bottom());
  std::vector<unsigned> positions;
  for (unsigned i : top.positions) {
    if (bottom.contains(i + 1)) positions.push_back(i);
  }
  return positions;
}

/// Extreme nestings that produce a nugatory crossing (0, 1 or 2 of them).
inline unsigned nugatory_nestings(const MeanderGraph& g) {
  const std::string& top = g.top().text();
  const std::string& bottom = g.bottom().text();
  const std::size_t n = top.size();
  unsigned count = 0;
  if (bottom[0] == '(' && bottom[1] == ')') ++count;
  if (top[n - 2] == '(' && top[n - 1] == ')') ++count;
  return count;
}

inline unsigned nesting_bigons(const MeanderGraph& g) {
  return static_cast<unsigned>(nestings(g.top()).size() + nestings(g.bottom()).size());
}

/// Closed curves of the base diagram as cycles of axis points.
struct ComponentStructure {
  /// Each cycle lists its points in traversal order. The axis cycle comes
  /// first and runs 0 -> 2s -> ...; every other cycle starts at its lowest
  /// point and leaves it through the upper arc.
  std::vector<std::vector<unsigned>> cycles;
  std::size_t axis_index = 0;

  std::size_t size() const noexcept { return cycles.size(); }
};

inline ComponentStructure components(const MeanderGraph& g) {
  const unsigned end = g.axis_end();
  std::vector<bool> seen(end + 1, false);
  ComponentStructure result;

  // Circles never touch the axis ends, so they simply alternate upper and
  // lower arcs.
  auto trace = [&](unsigned start) {
    std::vector<unsigned> cycle;
    unsigned p = start;
    bool upper = true;
    do {
      cycle.push_back(p);
      seen[p] = true;
      p = upper ? g.top_partner(p) : g.bottom_partner(p);
      upper = !upper;
    } while (p != start);
    return cycle;
  };

  // 0 -> 2s along the axis, then the arc at 2s is an upper one.
  {
    std::vector<unsigned> axis{0};
    seen[0] = true;
    unsigned p = end;
    bool upper = true;
    while (p != 0) {
      axis.push_back(p);
      seen[p] = true;
      p = upper ? g.top_partner(p) : g.bottom_partner(p);
      upper = !upper;
    }
    result.cycles.push_back(std::move(axis));
  }
  for (unsigned p = 1; p < end; ++p) {
    if (!seen[p]) result.cycles.push_back(trace(p));
  }
  return result;
}

}  // namespace meander
