#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "wordvec/corpus.hpp"
#include "wordvec/eval.hpp"

namespace wordvec {

struct CategorySpec {
  std::string name;
  Group group = Group::kSyntactic;
  std::vector<WordPair> pairs;
};

struct BuildStats {
  struct Entry {
    std::string name;
    Group group;
    std::size_t pairs;
    std::size_t questions;
  };
  std::vector<Entry> categories;
  std::size_t semantic_questions = 0;
  std::size_t syntactic_questions = 0;
  std::size_t total_questions = 0;
};

struct BuiltCorpus {
  AnalogyCorpus corpus;
  BuildStats stats;
};

// Expands every spec with expand_pairs, in order. Throws DomainError for an
// empty spec list, duplicate names, or a spec with fewer than two pairs.
BuiltCorpus build_corpus(const std::vector<CategorySpec>& specs);

// Manifest lines "name<TAB>group<TAB>path"; relative paths resolve against the
// manifest's directory.
std::vector<CategorySpec> read_manifest(const std::string& path);

std::string format_build_stats(const BuildStats& stats);

struct OovWord {
  std::string word;
  std::size_t questions = 0;  // questions of the category that use it

  bool operator==(const OovWord&) const = default;
};

struct CategoryCoverage {
  std::string name;
  Group group = Group::kSyntactic;
  std::size_t total = 0;
  std::size_t covered = 0;  // all four words within the search limit
  std::vector<OovWord> oov_words;  // most used first, then by word
};

struct CoverageReport {
  std::vector<CategoryCoverage> categories;
  std::size_t total = 0;
  std::size_t covered = 0;

  double coverage() const;  // percent
};

CoverageReport validate_corpus(const AnalogyCorpus& corpus, const Vocabulary& vocab,
                               std::size_t search_limit);

std::string format_coverage(const CoverageReport& report);

}  // namespace wordvec
