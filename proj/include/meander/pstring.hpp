#pragma once

// Balanced parenthesis strings ("p-strings"): parsing, nestings, lexicographic
// enumeration, and exact-uniform sampling by ranking against Catalan prefix
// counts.

#include "meander/arith.hpp"
#include "meander/combinatorics.hpp"
#include "meander/random.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace meander {

class ParseError : public std::invalid_argument {
 public:
  enum class Kind { IllegalCharacter, OddLength, Unbalanced };

  ParseError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class PString {
 public:
  PString() = default;

  /// Accepts exactly the balanced words over '(' and ')'.
  static PString parse(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '(' && text[i] != ')') {
        throw ParseError(ParseError::Kind::IllegalCharacter,
                         "illegal character '" + std::string(1, text[i]) + "' at position " + std::to_string(i + 1));
      }
    }
    if (text.size() % 2 != 0) {
      throw ParseError(ParseError::Kind::OddLength, "odd length " + std::to_string(text.size()));
    }
    long height = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      height += text[i] == '(' ? 1 : -1;
      if (height < 0) {
        throw ParseError(ParseError::Kind::Unbalanced, "unbalanced prefix ending at position " + std::to_string(i + 1));
      }
    }
    if (height != 0) throw ParseError(ParseError::Kind::Unbalanced, "unclosed parentheses");
    return PString(std::string(text));
  }

  unsigned pairs() const noexcept { return static_cast<unsigned>(word_.size() / 2); }
  std::size_t length() const noexcept { return word_.size(); }
  const std::string& text() const noexcept { return word_; }

  /// 1-based, as every position in this library.
  bool opens_at(std::size_t position) const { return word_.at(position - 1) == '('; }

  auto operator<=>(const PString&) const = default;

 private:
  explicit PString(std::string word) : word_(std::move(word)) {}

  template <class Count>
  friend class BasicDyckRanker;

  std::string word_;
};

/// Sorted 1-based positions i with "()" at i, i+1.
struct NestingSet {
  std::vector<unsigned> positions;

  std::size_t size() const noexcept { return positions.size(); }
  bool contains(unsigned i) const {
    for (unsigned p : positions) {
      if (p == i) return true;
    }
    return false;
  }
};

inline NestingSet nestings(const PString& p) {
  NestingSet set;
  const std::string& w = p.text();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == '(' && w[i + 1] == ')') set.positions.push_back(static_cast<unsigned>(i + 1));
  }
  return set;
}

namespace detail {

template <class Count>
bool is_negative(const Count& x) {
  if constexpr (std::is_unsigned_v<Count>) {
    return false;
  } else {
    return x < 0;
  }
}

}  // namespace detail

/// Bijection between [0, C_s) and the p-strings of s pairs in lexicographic
/// order with '(' < ')'. `Count` must hold C_s exactly.
template <class Count>
class BasicDyckRanker {
 public:
  explicit BasicDyckRanker(unsigned s) : s_(s), width_(s + 2), table_((2 * s + 1) * (s + 2), Count(0)) {
    const unsigned n = 2 * s;
    at(n, 0) = 1;
    for (unsigned k = n; k-- > 0;) {
      // only states reachable from the empty prefix that can still close
      for (unsigned h = 0; h <= std::min(k, n - k); ++h) {
        Count c = 0;
        if (h + 1 <= n - k - 1) c += at(k + 1, h + 1);
        if (h > 0) c += at(k + 1, h - 1);
        at(k, h) = c;
      }
    }
  }

  unsigned pairs() const noexcept { return s_; }
  const Count& total() const { return table_[0]; }

  PString unrank(Count index) const {
    if (detail::is_negative(index) || index >= total()) throw std::out_of_range("unrank: index out of range");
    std::string word;
    word.reserve(2 * s_);
    unsigned h = 0;
    for (unsigned k = 0; k < 2 * s_; ++k) {
      const Count& with_open = h + 1 <= s_ ? at(k + 1, h + 1) : zero_;
      if (index < with_open) {
        word.push_back('(');
        ++h;
      } else {
        index -= with_open;
        word.push_back(')');
        --h;
      }
    }
    return PString(std::move(word));
  }

  Count rank(const PString& p) const {
    if (p.pairs() != s_) throw std::invalid_argument("rank: string has the wrong number of pairs");
    Count index = 0;
    unsigned h = 0;
    for (unsigned k = 0; k < 2 * s_; ++k) {
      if (p.text()[k] == '(') {
        ++h;
      } else {
        if (h + 1 <= s_) index += at(k + 1, h + 1);
        --h;
      }
    }
    return index;
  }

  PString sample(Engine& engine) const { return unrank(uniform_below(total(), engine)); }

 private:
  Count& at(unsigned k, unsigned h) { return table_[k * width_ + h]; }
  const Count& at(unsigned k, unsigned h) const { return table_[k * width_ + h]; }

  unsigned s_;
  unsigned width_;
  std::vector<Count> table_;
  Count zero_ = 0;
};

using DyckRanker = BasicDyckRanker<BigInt>;

/// Uniform sampler over p-strings of s pairs; uses machine words while C_s fits.
class PStringSampler {
 public:
  explicit PStringSampler(unsigned s) : ranker_(make(s)) {}

  PString operator()(Engine& engine) const {
    return std::visit([&](const auto& r) { return r.sample(engine); }, ranker_);
  }

 private:
  using Variant = std::variant<DyckRanker, BasicDyckRanker<std::uint64_t>>;

  // C_35 < 2^63 <= C_36; reachable prefix counts never exceed C_s.
  static constexpr unsigned kMaxWordPairs = 35;

  static Variant make(unsigned s) {
    if (s <= kMaxWordPairs) return Variant(std::in_place_index<1>, s);
    return Variant(std::in_place_index<0>, s);
  }

  Variant ranker_;
};

inline PString sample_uniform(unsigned s, Engine& engine) { return PStringSampler(s)(engine); }

inline PString unrank(unsigned s, const BigInt& index) { return DyckRanker(s).unrank(index); }
inline BigInt rank(const PString& p) { return DyckRanker(p.pairs()).rank(p); }

inline constexpr unsigned kDefaultEnumerationCap = 8;

/// All p-strings of s pairs in lexicographic order.
inline std::vector<PString> enumerate_all(unsigned s, unsigned cap = kDefaultEnumerationCap) {
  if (s > cap) {
    throw std::invalid_argument("enumerate_all: s = " + std::to_string(s) + " exceeds cap " + std::to_string(cap));
  }
  const DyckRanker ranker(s);
  const auto count = ranker.total().template convert_to<std::uint64_t>();
  std::vector<PString> all;
  all.reserve(count);
  std::string word;
  // depth-first in lexicographic order
  auto recurse = [&](auto&& self, unsigned open, unsigned close) -> void {
    if (open == s && close == s) {
      all.push_back(PString::parse(word));
      return;
    }
    if (open < s) {
      word.push_back('(');
      self(self, open + 1, close);
      word.pop_back();
    }
    if (close < open) {
      word.push_back(')');
      self(self, open, close + 1);
      word.pop_back();
    }
  };
  recurse(recurse, 0, 0);
  return all;
}

}  // namespace meander
