#pragma once

// Exact counting for random meander graphs: Catalan and Narayana numbers,
// pierced-circle counts O(s, k) and E(s, k), closed-form expectations, the
// order-3 recurrence for E(s, 0) and the volume bounds built on the
// expected twist number.

#include "meander/arith.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace meander {

/// Volume of the regular ideal hyperbolic tetrahedron.
inline constexpr double kIdealTetrahedronVolume = 1.0149416064096536;

/// Binomial coefficient with the convention binom(n, k) = 0 outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is binom(n - k + i, i) here
  }
  return result;
}

inline BigInt catalan(unsigned n) { return binomial(2 * std::int64_t{n}, n) / (n + 1); }

/// Catalan numbers C_0 .. C_max in one pass.
inline std::vector<BigInt> catalan_table(unsigned max) {
  std::vector<BigInt> table(max + 1);
  table[0] = 1;
  for (unsigned n = 0; n < max; ++n) {
    // C_{n+1} = C_n * 2(2n+1) / (n+2)
    table[n + 1] = table[n] * (2 * (2 * n + 1)) / (n + 2);
  }
  return table;
}

/// Number of p-strings with n pairs and exactly k nestings.
inline BigInt narayana(unsigned n, unsigned k) {
  if (n == 0) throw std::invalid_argument("narayana: n must be at least 1");
  if (k < 1 || k > n) return 0;
  return binomial(n, k) * binomial(n, k - 1) / n;
}

/// Ways to place k vertex-disjoint pierced circles on a path of v vertices.
inline BigInt count_pierced_placements(unsigned v, unsigned k) {
  if (v == 0) throw std::invalid_argument("count_pierced_placements: v must be at least 1");
  return binomial(std::int64_t{v} - k, k);
}

namespace detail {

inline void check_s_k(const char* what, unsigned s, unsigned k) {
  if (s == 0) throw std::invalid_argument(std::string(what) + ": s must be at least 1");
  if (k > s) throw std::invalid_argument(std::string(what) + ": k must not exceed s");
}

inline BigInt count_O_with(const std::vector<BigInt>& cat, unsigned s, unsigned k) {
  const BigInt& c = cat[s - k];
  return binomial(2 * std::int64_t{s} - k - 1, k) * c * c;
}

inline BigInt count_E_with(const std::vector<BigInt>& cat, unsigned s, unsigned k) {
  BigInt sum = 0;
  for (unsigned m = k; m <= s; ++m) {
    BigInt term = binomial(m, k) * count_O_with(cat, s, m);
    if ((m + k) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  if (sum < 0) throw std::logic_error("count_E: inclusion-exclusion produced a negative count");
  return sum;
}

}  // namespace detail

/// Triples (placement of k pierced circles, top string, bottom string) on 2s-1 vertices.
inline BigInt count_O(unsigned s, unsigned k) {
  detail::check_s_k("count_O", s, k);
  return detail::count_O_with(catalan_table(s), s, k);
}

/// Meander graphs with 2s-1 vertices and exactly k pierced circles.
inline BigInt count_E(unsigned s, unsigned k) {
  detail::check_s_k("count_E", s, k);
  return detail::count_E_with(catalan_table(s), s, k);
}

struct CountEntry {
  BigInt o_value;
  BigInt e_value;
};

/// O(s, k) and E(s, k) for every k in [0, s].
struct CountTable {
  unsigned s = 0;
  std::map<unsigned, CountEntry> entries;
};

inline CountTable count_table(unsigned s) {
  detail::check_s_k("count_table", s, 0);
  const auto cat = catalan_table(s);
  CountTable table;
  table.s = s;
  for (unsigned k = 0; k <= s; ++k) {
    table.entries[k] = CountEntry{detail::count_O_with(cat, s, k), detail::count_E_with(cat, s, k)};
  }
  return table;
}

// Expectations --------------------------------------------------------------

/// Expected number of pierced circles in a uniform meander graph with 2s-1 vertices.
inline Rational expected_pierced_circles(unsigned s) {
  if (s == 0) throw std::invalid_argument("expected_pierced_circles: s must be at least 1");
  const auto cat = catalan_table(s);
  return Rational(detail::count_O_with(cat, s, 1), cat[s] * cat[s]);
}

/// (s^3 + s^2 - s - 1) / (8s^2 - 8s + 2); agrees with expected_pierced_circles for s >= 2.
inline Rational pierced_circles_closed_form(unsigned s) {
  const BigInt x = s;
  return Rational(x * x * x + x * x - x - 1, 8 * x * x - 8 * x + 2);
}

inline Rational expected_nestings(unsigned n) {
  if (n == 0) throw std::invalid_argument("expected_nestings: n must be at least 1");
  return Rational(n + 1, 2);
}

inline Rational expected_bigons(unsigned s) {
  if (s == 0) throw std::invalid_argument("expected_bigons: s must be at least 1");
  return Rational(s + 1);
}

/// (2s-1) r^2 - s - 1; may be non-positive for tiny diagrams and is returned as is.
inline Rational expected_twists(unsigned s, unsigned r) {
  if (s == 0 || r == 0) throw std::invalid_argument("expected_twists: s and r must be at least 1");
  const BigInt ss = s;
  const BigInt rr = r;
  return Rational((2 * ss - 1) * rr * rr - ss - 1);
}

// Recurrence for E(s, 0) ------------------------------------------------------

/// Coefficients of sum_k P_k(s) E(s+k, 0) = 0.
struct RecurrencePolynomials {
  using Cubic = std::array<std::int64_t, 4>;  // c0 + c1 s + c2 s^2 + c3 s^3

  static constexpr std::array<Cubic, 4> coefficients{{
      {5, -8, 1, 2},
      {-30, -82, -93, -26},
      {-81, -226, -141, -26},
      {16, 40, 17, 2},
  }};

  static BigInt evaluate(unsigned k, const BigInt& s) {
    const Cubic& c = coefficients.at(k);
    return ((c[3] * s + c[2]) * s + c[1]) * s + c[0];
  }
};

inline BigInt zeilberger_residual(unsigned s) {
  if (s == 0) throw std::invalid_argument("zeilberger_residual: s must be at least 1");
  const auto cat = catalan_table(s + 3);
  BigInt residual = 0;
  for (unsigned k = 0; k <= 3; ++k) {
    residual += RecurrencePolynomials::evaluate(k, s) * detail::count_E_with(cat, s + k, 0);
  }
  return residual;
}

struct RatioPoint {
  unsigned s = 0;
  Rational a;                       // E(s,0) / C_s^2
  std::optional<Rational> e_ratio;  // E(s+1,0) / E(s,0)
};

inline std::vector<RatioPoint> ratio_sequence(unsigned max_s) {
  if (max_s < 2) throw std::invalid_argument("ratio_sequence: max_s must be at least 2");
  const auto cat = catalan_table(max_s + 1);
  std::vector<BigInt> e0(max_s + 2);
  for (unsigned s = 1; s <= max_s + 1; ++s) e0[s] = detail::count_E_with(cat, s, 0);

  std::vector<RatioPoint> points;
  points.reserve(max_s);
  for (unsigned s = 1; s <= max_s; ++s) {
    RatioPoint p;
    p.s = s;
    p.a = Rational(e0[s], cat[s] * cat[s]);
    if (e0[s] != 0) p.e_ratio = Rational(e0[s + 1], e0[s]);
    points.push_back(std::move(p));
  }
  return points;
}

/// Roots of t^3 - 13t^2 - 13t + 1 in increasing order: -1, 7 - 4 sqrt 3, 7 + 4 sqrt 3.
inline std::array<double, 3> characteristic_roots() {
  const double root3 = std::sqrt(3.0);
  return {-1.0, 7.0 - 4.0 * root3, 7.0 + 4.0 * root3};
}

// Volume ------------------------------------------------------------------------

struct VolumeBounds {
  std::optional<double> lower;
  double upper = 0.0;
  bool vacuous = false;  // some reported bound is <= 0
};

/// Coefficient m of the upper bound 10 v3 m: (2s-1) r^2 - s - 3, or s - 3
/// when r = 1.
inline std::int64_t volume_upper_multiplier(unsigned s, unsigned r) {
  if (r == 1) return std::int64_t{s} - 3;
  return (2 * std::int64_t{s} - 1) * r * r - s - 3;
}

/// Bounds on the expected volume from the expected twist number. The lower
/// bound only exists for alternating diagrams with r > 1.
inline VolumeBounds volume_bounds(unsigned s, unsigned r, bool alternating) {
  if (s == 0 || r == 0) throw std::invalid_argument("volume_bounds: s and r must be at least 1");
  const auto twists_base = static_cast<std::int64_t>(2 * std::int64_t{s} - 1) * r * r - s;
  VolumeBounds b;
  b.upper = 10.0 * kIdealTetrahedronVolume * static_cast<double>(volume_upper_multiplier(s, r));
  if (alternating && r != 1) {
    b.lower = kIdealTetrahedronVolume * static_cast<double>(twists_base - 5) / 2.0;
  }
  b.vacuous = b.upper <= 0.0 || (b.lower && *b.lower <= 0.0);
  return b;
}

}  // namespace meander
