#include "wordvec/corpus.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wordvec/error.hpp"

namespace wordvec {
namespace {

std::vector<Sentence> sample_sentences() {
  return {
      {"the", "cat", "sat", "on", "the", "mat"},
      {"a", "dog", "sat"},
      {"the", "dog", "ran", "after", "the", "cat"},
      {"cat", "and", "dog", "and", "the", "bird"},
  };
}

TEST(SentenceFilter, KeepsFiveTokensOrMore) {
  EXPECT_TRUE(admits_sentence({"a", "b", "c", "d", "e"}));
  EXPECT_FALSE(admits_sentence({"a", "b", "c", "d"}));
  const auto kept = filter_sentences(sample_sentences());
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_EQ(kept[1][1], "dog");
  EXPECT_EQ(filter_sentences(sample_sentences(), 3).size(), 4u);
}

TEST(Vocabulary, OrdersByCountThenFirstOccurrence) {
  const auto s = sample_sentences();
  const auto v = build_vocabulary(s, 1);
  ASSERT_GE(v.size(), 4u);
  EXPECT_EQ(v.word(0), "the");
  EXPECT_EQ(v.count(0), 5u);
  // cat and dog both occur 3 times; cat appears first
  EXPECT_EQ(v.word(1), "cat");
  EXPECT_EQ(v.word(2), "dog");
  EXPECT_EQ(v.total_tokens(), 21u);
}

TEST(Vocabulary, MinCountPrunes) {
  const auto s = sample_sentences();
  const auto v = build_vocabulary(s, 3);
  EXPECT_EQ(v.size(), 3u);
  EXPECT_FALSE(v.find("mat"));
  EXPECT_THROW(build_vocabulary(s, 0), ConfigError);
}

TEST(Vocabulary, ParallelCountingMatchesSequential) {
  std::vector<Sentence> s;
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    Sentence x;
    for (int k = 0; k < 8; ++k) x.push_back("w" + std::to_string(rng.below(60)));
    s.push_back(x);
  }
  const auto one = build_vocabulary(s, 2, 1);
  for (unsigned w : {2u, 3u, 7u}) EXPECT_EQ(build_vocabulary(s, 2, w), one);
}

TEST(Vocabulary, RejectsUnsortedOrDuplicateEntries) {
  EXPECT_THROW(Vocabulary({{"a", 1}, {"b", 2}}, 1), ConfigError);
  EXPECT_THROW(Vocabulary({{"a", 2}, {"a", 1}}, 1), ConfigError);
  EXPECT_THROW(Vocabulary({{"a", 2}, {"b", 1}}, 2), ConfigError);
  EXPECT_THROW(Vocabulary({{"", 2}}, 1), ConfigError);
}

TEST(Vocabulary, CaseFoldedLookupPrefersFrequentForm) {
  const Vocabulary v({{"Paris", 9}, {"paris", 5}, {"London", 4}}, 1);
  EXPECT_EQ(v.resolve("paris"), 1u);
  EXPECT_EQ(v.resolve("PARIS"), 0u);
  EXPECT_EQ(v.resolve("london"), 2u);
  EXPECT_FALSE(v.resolve("berlin"));
}

TEST(Vocabulary, DumpRoundTrips) {
  const Vocabulary v({{"the", 9}, {"kuća", 5}, {"x", 5}}, 1);
  std::stringstream ss;
  v.write_dump(ss);
  EXPECT_EQ(ss.str(), "the\t9\nkuća\t5\nx\t5\n");
  EXPECT_EQ(Vocabulary::read_dump(ss, "dump"), v);
  std::istringstream bad("a\t3\nb\tx\n");
  try {
    Vocabulary::read_dump(bad, "dump");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(IndexCorpus, DropsUnknownTokens) {
  const auto s = sample_sentences();
  const auto v = build_vocabulary(s, 3);
  const auto c = index_corpus(s, v);
  ASSERT_EQ(c.size(), s.size());
  EXPECT_EQ(c[0], (std::vector<std::uint32_t>{0, 1, 0}));
}

TEST(ReadSentences, TokenizesAndReportsBadLines) {
  std::istringstream in("One, two three.\n\n!!!\nfour five\n");
  const auto s = read_sentences(in, "text");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (Sentence{"One", "two", "three"}));
  std::istringstream bad("fine line\nbroken \xC3\n");
  try {
    read_sentences(bad, "text");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Subsampling, KeepProbability) {
  EXPECT_DOUBLE_EQ(keep_probability(1e-3, 1e-5), 0.1);
  EXPECT_DOUBLE_EQ(keep_probability(1e-6, 1e-5), 1.0);
  EXPECT_DOUBLE_EQ(keep_probability(1e-5, 1e-5), 1.0);
  EXPECT_THROW(keep_probability(0, 1e-5), DomainError);
  EXPECT_THROW(keep_probability(-0.1, 1e-5), DomainError);
  EXPECT_THROW(keep_probability(1e-3, 0), DomainError);
}

TEST(NoiseTable, SlotsWithinOneOfExactShare) {
  const std::vector<std::uint64_t> counts = {10, 5, 1};
  const NoiseTable t(counts, 0.75, 1000);
  std::vector<std::size_t> slots(3, 0);
  for (const auto w : t.slots()) ++slots[w];
  // 10^.75 : 5^.75 : 1 -> 0.5642, 0.3355, 0.1003
  EXPECT_NEAR(static_cast<double>(slots[0]), 564.2, 1.0);
  EXPECT_NEAR(static_cast<double>(slots[1]), 335.5, 1.0);
  EXPECT_NEAR(static_cast<double>(slots[2]), 100.3, 1.0);
  EXPECT_EQ(t.distinct_words(), 3u);
}

TEST(NoiseTable, SlotShareWithinOneOverT) {
  const std::size_t t = 1'000'000;
  const NoiseTable two(std::vector<std::uint64_t>{3, 1}, 0.75, t);
  const auto a = std::count(two.slots().begin(), two.slots().end(), 0u);
  EXPECT_NEAR(static_cast<double>(a) / t, 0.6951, 0.001);

  const NoiseTable one(std::vector<std::uint64_t>{5}, 0.3, 100);
  EXPECT_EQ(std::count(one.slots().begin(), one.slots().end(), 0u), 100);
  const NoiseTable even(std::vector<std::uint64_t>{1, 1}, 0.75, 1000);
  EXPECT_EQ(std::count(even.slots().begin(), even.slots().end(), 0u), 500);

  Rng rng(2);
  std::vector<std::uint64_t> counts(1000);
  for (auto& c : counts) c = 1 + rng.below(100000);
  std::sort(counts.rbegin(), counts.rend());
  const NoiseTable big(counts, 0.75, t);
  std::vector<std::size_t> hits(counts.size(), 0);
  for (const auto w : big.slots()) ++hits[w];
  long double total = 0;
  for (const auto c : counts) total += std::pow(static_cast<long double>(c), 0.75L);
  for (std::size_t w = 0; w < counts.size(); ++w) {
    const long double share = std::pow(static_cast<long double>(counts[w]), 0.75L) / total;
    ASSERT_LE(std::abs(static_cast<long double>(hits[w]) - share * t), 1.0L) << w;
  }
}

TEST(NoiseTable, RejectsDegenerateTables) {
  EXPECT_THROW(NoiseTable(std::vector<std::uint64_t>{}), ConfigError);
  EXPECT_THROW(NoiseTable(std::vector<std::uint64_t>{3, 2, 1}, 0.75, 2), ConfigError);
}

TEST(NoiseTable, SampleExcludingNeverReturnsTarget) {
  const NoiseTable t(std::vector<std::uint64_t>{100, 1}, 0.75, 100);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(t.sample_excluding(0, rng), 1u);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  auto a = Rng::stream(1, 2, 3), b = Rng::stream(1, 2, 3), c = Rng::stream(1, 2, 4);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const auto k = r.between(2, 4);
    EXPECT_GE(k, 2u);
    EXPECT_LE(k, 4u);
  }
}

}  // namespace
}  // namespace wordvec
