#include "wordvec/subword.hpp"

#include <gtest/gtest.h>

#include "wordvec/config.hpp"
#include "wordvec/corpus.hpp"

namespace wordvec {
namespace {

using Grams = std::vector<std::string>;

TEST(Ngrams, WrapsAndSkipsWholeWord) {
  EXPECT_EQ(extract_ngrams("cat", 3, 3), (Grams{"<ca", "cat", "at>"}));
  EXPECT_EQ(extract_ngrams("cat", 3, 6), (Grams{"<ca", "<cat", "cat", "cat>", "at>"}));
  EXPECT_TRUE(extract_ngrams("a", 3, 6).empty());
}

TEST(Ngrams, CountsCodePointsNotBytes) {
  EXPECT_EQ(extract_ngrams("kuća", 3, 4), (Grams{"<ku", "<kuć", "kuć", "kuća", "uća", "uća>", "ća>"}));
}

TEST(Fnv1a, MatchesIndependentValues) {
  EXPECT_EQ(fnv1a_32(""), 2166136261u);
  EXPECT_EQ(fnv1a_32("a"), 3826002220u);
  EXPECT_EQ(fnv1a_32("cat"), 108289031u);
  EXPECT_EQ(fnv1a_32("kuća"), 4293525055u);
  EXPECT_EQ(hash_ngram("<ca", 1000), 1066916747u % 1000);
}

TEST(InputRows, WordRowThenBuckets) {
  const Vocabulary vocab({{"cat", 3}, {"a", 2}}, 1);
  ModelConfig cfg;
  cfg.subword = true;
  cfg.minn = 3;
  cfg.maxn = 3;
  cfg.buckets = 100;
  const InputRows rows(vocab, cfg);
  const auto cat = rows.of(0);
  ASSERT_EQ(cat.size(), 4u);
  EXPECT_EQ(cat[0], 0u);
  EXPECT_EQ(cat[1], 2 + hash_ngram("<ca", 100));
  EXPECT_EQ(cat[3], 2 + hash_ngram("at>", 100));
  EXPECT_EQ(rows.of(1).size(), 1u);  // "<a>" is the whole word
  cfg.subword = false;
  const InputRows plain(vocab, cfg);
  EXPECT_EQ(plain.of(0).size(), 1u);
  EXPECT_EQ(plain.total_rows(), 2u);
}

}  // namespace
}  // namespace wordvec
