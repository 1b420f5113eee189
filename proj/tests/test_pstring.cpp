#include "meander/pstring.hpp"
#include "meander/combinatorics.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace meander;

TEST(Parse, AcceptsBalanced) {
  EXPECT_EQ(PString::parse("(()())").pairs(), 3u);
  EXPECT_EQ(PString::parse("").pairs(), 0u);
  EXPECT_TRUE(PString::parse("()").opens_at(1));
  EXPECT_FALSE(PString::parse("()").opens_at(2));
}

TEST(Parse, RejectsWithKind) {
  auto kind_of = [](const char* text) {
    try {
      PString::parse(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << text << " parsed";
    return ParseError::Kind::Unbalanced;
  };
  EXPECT_EQ(kind_of("(a)"), ParseError::Kind::IllegalCharacter);
  EXPECT_EQ(kind_of("(()"), ParseError::Kind::OddLength);
  EXPECT_EQ(kind_of(")("), ParseError::Kind::Unbalanced);
  EXPECT_EQ(kind_of("(("), ParseError::Kind::Unbalanced);
  EXPECT_THROW(PString::parse("())("), std::invalid_argument);
}

TEST(Nestings, Positions) {
  EXPECT_EQ(nestings(PString::parse("()()()")).positions, (std::vector<unsigned>{1, 3, 5}));
  EXPECT_EQ(nestings(PString::parse("((()))")).positions, (std::vector<unsigned>{3}));
  EXPECT_EQ(nestings(PString::parse("(()())")).positions, (std::vector<unsigned>{2, 4}));
  EXPECT_TRUE(nestings(PString::parse("(())")).contains(2));
  EXPECT_FALSE(nestings(PString::parse("(())")).contains(1));
}

TEST(Nestings, MeanIsNarayanaWeighted) {
  // Strings with k nestings are counted by N(s,k).
  for (unsigned s = 1; s <= 8; ++s) {
    std::map<std::size_t, BigInt> hist;
    for (const PString& p : enumerate_all(s)) hist[nestings(p).size()] += 1;
    for (const auto& [k, n] : hist) EXPECT_EQ(n, narayana(s, static_cast<unsigned>(k))) << s << ' ' << k;
  }
}

TEST(Enumerate, CountsAndOrder) {
  for (unsigned s = 0; s <= 8; ++s) EXPECT_EQ(BigInt(enumerate_all(s).size()), catalan(s));
  const auto three = enumerate_all(3);
  std::vector<std::string> text;
  for (const auto& p : three) text.push_back(p.text());
  EXPECT_EQ(text, (std::vector<std::string>{"((()))", "(()())", "(())()", "()(())", "()()()"}));
  EXPECT_THROW(enumerate_all(9), std::invalid_argument);
  EXPECT_EQ(enumerate_all(9, 9).size(), 4862u);
}

TEST(Rank, RoundTripAll) {
  for (unsigned s = 1; s <= 8; ++s) {
    const DyckRanker ranker(s);
    const auto all = enumerate_all(s);
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(ranker.unrank(BigInt(i)), all[i]);
      EXPECT_EQ(ranker.rank(all[i]), i);
    }
  }
}

TEST(Rank, LargeRoundTrip) {
  Engine engine = derive_engine(1, 2);
  for (unsigned s : {35u, 36u, 100u, 500u}) {
    const DyckRanker ranker(s);
    EXPECT_EQ(ranker.total(), catalan(s));
    for (int t = 0; t < 20; ++t) {
      const BigInt i = uniform_below(ranker.total(), engine);
      const PString p = ranker.unrank(i);
      EXPECT_EQ(p.pairs(), s);
      EXPECT_EQ(rank(p), i);
    }
  }
  EXPECT_THROW(unrank(3, catalan(3)), std::out_of_range);
}

TEST(Rank, NarrowAndWideAgree) {
  for (unsigned s : {1u, 10u, 35u}) {
    const BasicDyckRanker<std::uint64_t> narrow(s);
    const DyckRanker wide(s);
    EXPECT_EQ(BigInt(narrow.total()), wide.total());
    Engine engine = derive_engine(3, s);
    for (int t = 0; t < 50; ++t) {
      const std::uint64_t i = uniform_below(narrow.total(), engine);
      EXPECT_EQ(narrow.unrank(i), wide.unrank(BigInt(i)));
    }
  }
}

TEST(Sample, UniformAtFivePairs) {
  // 42 strings; chi-square with 41 degrees of freedom.
  const unsigned s = 5;
  const std::uint64_t n = 84000;
  std::map<std::string, std::uint64_t> seen;
  const PStringSampler sampler(s);
  for (std::uint64_t i = 0; i < n; ++i) {
    Engine engine = derive_engine(11, i);
    ++seen[sampler(engine).text()];
  }
  ASSERT_EQ(seen.size(), 42u);
  const double expected = static_cast<double>(n) / 42.0;
  double chi2 = 0.0;
  for (const auto& [w, c] : seen) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 85.0);  // p < 1e-4 beyond this
}

TEST(Sample, Deterministic) {
  Engine a = derive_engine(42, 7);
  Engine b = derive_engine(42, 7);
  Engine c = derive_engine(42, 8);
  const PString pa = sample_uniform(50, a);
  EXPECT_EQ(pa, sample_uniform(50, b));
  EXPECT_NE(pa, sample_uniform(50, c));
}

TEST(Random, UniformBelowRange) {
  Engine engine = derive_engine(5, 5);
  std::set<std::uint64_t> hits;
  for (int i = 0; i < 2000; ++i) {
    const auto x = uniform_below(std::uint64_t{7}, engine);
    ASSERT_LT(x, 7u);
    hits.insert(x);
  }
  EXPECT_EQ(hits.size(), 7u);
  const BigInt big = BigInt(1) << 130;
  for (int i = 0; i < 100; ++i) EXPECT_LT(uniform_below(big + 3, engine), big + 3);
}
