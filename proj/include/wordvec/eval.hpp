#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wordvec/store.hpp"

namespace wordvec {

enum class Group { kSemantic, kSyntactic };

std::string_view to_string(Group group);
std::optional<Group> parse_group(std::string_view text);

// "a is to b as c is to d"; d is the word to predict.
struct AnalogyQuestion {
  std::string a, b, c, d;

  bool operator==(const AnalogyQuestion&) const = default;
};

struct AnalogyCategory {
  std::string name;
  Group group = Group::kSyntactic;
  std::vector<AnalogyQuestion> questions;

  bool operator==(const AnalogyCategory&) const = default;
};

struct AnalogyCorpus {
  std::vector<AnalogyCategory> categories;

  std::size_t question_count() const;
  bool operator==(const AnalogyCorpus&) const = default;
};

using WordPair = std::pair<std::string, std::string>;

// Every ordered pair (i, j), i != j, gives (x_i, y_i, x_j, y_j); i-major.
// Throws DomainError for fewer than two pairs or repeated pairs.
std::vector<AnalogyQuestion> expand_pairs(const std::vector<WordPair>& pairs);

// Corpus file: ": name" starts a category, question lines are four words.
// Groups come from the optional sidecar ("name<TAB>semantic|syntactic");
// categories it does not mention default to syntactic and are reported in
// `warnings`.
AnalogyCorpus read_analogy_corpus(std::istream& corpus, const std::string& source,
                                  std::istream* groups, const std::string& groups_source,
                                  std::vector<std::string>* warnings = nullptr);
void write_analogy_corpus(const AnalogyCorpus& corpus, std::ostream& out);
void write_groups(const AnalogyCorpus& corpus, std::ostream& out);

// "x<TAB>y" lines; blank lines and lines starting with '#' are skipped.
std::vector<WordPair> read_pair_list(std::istream& in, const std::string& source);

// Result of one analogy query.
struct AnalogyAnswer {
  enum class Status { kOov, kPredicted, kNoCandidate };
  Status status = Status::kOov;
  std::size_t index = 0;  // valid when kPredicted

  bool oov() const { return status == Status::kOov; }
};

// Looks up a, b, c (exact, then case-folded); any word missing or at an
// index >= search_limit gives kOov. Otherwise predicts the row nearest to
// unit(b) - unit(a) + unit(c) among the first search_limit words, excluding
// a, b and c.
AnalogyAnswer solve_analogy(const VectorStore& store, const AnalogyQuestion& q,
                            std::size_t search_limit);

inline constexpr std::size_t kDefaultSearchLimit = 300'000;

struct CategoryResult {
  std::string name;
  Group group = Group::kSyntactic;
  std::size_t correct = 0;
  std::size_t answered = 0;
  std::size_t total = 0;

  double accuracy() const;  // percent of answered
};

struct GroupResult {
  std::size_t correct = 0;
  std::size_t answered = 0;
  std::size_t total = 0;

  double accuracy() const;           // percent of answered
  double accuracy_with_oov() const;  // percent of total, OOV counted wrong
};

struct EvalReport {
  std::vector<CategoryResult> categories;
  GroupResult semantic;
  GroupResult syntactic;
  GroupResult all;

  double all_acc() const { return all.accuracy(); }
  double all_acc_with_oov() const { return all.accuracy_with_oov(); }
};

// Questions with any of the four words out of vocabulary (or beyond
// search_limit) are not answered. Throws DomainError on an empty corpus.
EvalReport evaluate_analogies(const VectorStore& store, const AnalogyCorpus& corpus,
                              std::size_t search_limit = kDefaultSearchLimit, unsigned workers = 1);

// Category rows, then group aggregates, then ALL with the include-OOV
// accuracy in parentheses.
std::string format_report_table(const EvalReport& report);
// Stable key=value lines.
std::string format_report_kv(const EvalReport& report);

// Mean of the raw vectors of the 10 least frequent words among the first
// `limit` words (all of them when fewer than 10).
std::vector<double> oov_fallback_vector(const VectorStore& store, std::size_t limit);
std::vector<double> oov_fallback_vector(const VectorStore& store);

// Pearson correlation of average ranks. Throws DomainError on a length
// mismatch, fewer than two values, or zero rank variance.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct SimilarityPair {
  std::string w1, w2;
  double human_score = 0;
};

// "w1<TAB>w2<TAB>score"; scores outside [scale_min, scale_max] are a parse
// error.
std::vector<SimilarityPair> read_similarity_pairs(std::istream& in, const std::string& source,
                                                  double scale_min, double scale_max);

struct PairDetail {
  std::string w1, w2;
  double human_score = 0;
  double model_score = 0;
  bool w1_oov = false;
  bool w2_oov = false;
};

struct SimilarityResult {
  double score = 0;  // rho * 100
  std::vector<PairDetail> pairs;
  std::size_t oov_words = 0;
};

// Cosine per pair, with oov_fallback_vector standing in for unknown words,
// ranked against the human scores.
SimilarityResult evaluate_similarity(const VectorStore& store, const std::vector<SimilarityPair>& pairs,
                                     std::size_t search_limit);
SimilarityResult evaluate_similarity(const VectorStore& store, const std::vector<SimilarityPair>& pairs);

// Exact comparison, then case-folded.
bool same_word(std::string_view a, std::string_view b);

// Vocabulary lookup restricted to the first `limit` words.
std::optional<std::size_t> resolve_within(const Vocabulary& vocab, std::string_view word,
                                          std::size_t limit);

}  // namespace wordvec
