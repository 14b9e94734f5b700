#include "wordvec/corpus_tools.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "wordvec/error.hpp"

namespace wordvec {
namespace {

namespace fs = std::filesystem;

std::vector<WordPair> numbered_pairs(std::size_t n, const std::string& tag) {
  std::vector<WordPair> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back({tag + "x" + std::to_string(i), tag + "y" + std::to_string(i)});
  return p;
}

TEST(BuildCorpus, SemanticCategorySizesExpandByNTimesNMinusOne) {
  const std::size_t sizes[] = {23, 119, 20, 67, 118, 20, 20, 40, 41};
  std::vector<CategorySpec> specs;
  std::size_t expected = 0;
  for (std::size_t i = 0; i < std::size(sizes); ++i) {
    specs.push_back({"c" + std::to_string(i), Group::kSemantic, numbered_pairs(sizes[i], "c" + std::to_string(i))});
    expected += sizes[i] * (sizes[i] - 1);
  }
  const auto built = build_corpus(specs);
  EXPECT_EQ(expected, 37'116u);
  EXPECT_EQ(built.stats.semantic_questions, 37'116u);
  EXPECT_EQ(built.stats.syntactic_questions, 0u);
  EXPECT_EQ(built.corpus.question_count(), 37'116u);
  EXPECT_EQ(built.stats.categories[0].questions, 506u);
}

TEST(BuildCorpus, RejectsBadSpecs) {
  EXPECT_THROW(build_corpus({}), DomainError);
  EXPECT_THROW(build_corpus({{"a", Group::kSemantic, numbered_pairs(2, "")}, {"a", Group::kSemantic, numbered_pairs(3, "")}}),
               DomainError);
  EXPECT_THROW(build_corpus({{"a", Group::kSemantic, numbered_pairs(1, "")}}), DomainError);
}

TEST(BuildStats, KeyValueOutput) {
  const auto built = build_corpus({{"cap", Group::kSemantic, numbered_pairs(3, "a")},
                                   {"plural", Group::kSyntactic, numbered_pairs(4, "b")}});
  const auto text = format_build_stats(built.stats);
  EXPECT_NE(text.find("category.cap.questions=6\n"), std::string::npos);
  EXPECT_NE(text.find("syntactic.questions=12\n"), std::string::npos);
  EXPECT_NE(text.find("all.questions=18\n"), std::string::npos);
}

TEST(Manifest, ResolvesRelativePaths) {
  const auto dir = fs::temp_directory_path() / ("wordvec-manifest-" + std::to_string(::getpid()));
  fs::create_directories(dir / "lists");
  std::ofstream(dir / "lists" / "cap.txt") << "france\tparis\nitaly\trome\n# comment\n\nspain\tmadrid\n";
  std::ofstream(dir / "manifest.tsv") << "# name group path\ncapital\tsemantic\tlists/cap.txt\n";
  const auto specs = read_manifest((dir / "manifest.tsv").string());
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_EQ(specs[0].pairs.size(), 3u);
  EXPECT_EQ(specs[0].group, Group::kSemantic);
  std::ofstream(dir / "bad.tsv") << "capital\tcosmic\tlists/cap.txt\n";
  EXPECT_THROW(read_manifest((dir / "bad.tsv").string()), ParseError);
  std::ofstream(dir / "missing.tsv") << "capital\tsemantic\tlists/none.txt\n";
  EXPECT_THROW(read_manifest((dir / "missing.tsv").string()), IoError);
  fs::remove_all(dir);
}

TEST(Coverage, ReportsMissingWordsByUse) {
  AnalogyCorpus c;
  c.categories.push_back({"cap", Group::kSemantic,
                          expand_pairs({{"france", "paris"}, {"italy", "rome"}, {"kenya", "nairobi"}})});
  const Vocabulary vocab({{"france", 9}, {"paris", 8}, {"italy", 7}, {"rome", 6}, {"kenya", 5}}, 1);
  const auto r = validate_corpus(c, vocab, 100);
  EXPECT_EQ(r.total, 6u);
  EXPECT_EQ(r.covered, 2u);
  ASSERT_EQ(r.categories[0].oov_words.size(), 1u);
  EXPECT_EQ(r.categories[0].oov_words[0], (OovWord{"nairobi", 4}));
  // a tight limit drops kenya, rome and italy too
  const auto tight = validate_corpus(c, vocab, 2);
  EXPECT_EQ(tight.covered, 0u);
  EXPECT_EQ(tight.categories[0].oov_words.size(), 4u);
  const auto text = format_coverage(r);
  EXPECT_NE(text.find("category.cap.oov_words=nairobi:4\n"), std::string::npos);
  EXPECT_NE(text.find("all.coverage=33.33\n"), std::string::npos);
}

}  // namespace
}  // namespace wordvec
