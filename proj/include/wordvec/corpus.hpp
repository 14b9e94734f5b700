#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wordvec/random.hpp"

namespace wordvec {

using Sentence = std::vector<std::string>;

inline constexpr std::size_t kMinSentenceTokens = 5;

bool admits_sentence(const Sentence& sentence, std::size_t min_tokens = kMinSentenceTokens);

// Keeps sentences with at least `min_tokens` tokens, preserving order.
std::vector<Sentence> filter_sentences(std::vector<Sentence> sentences,
                                       std::size_t min_tokens = kMinSentenceTokens);

struct VocabEntry {
  std::string word;
  std::uint64_t count = 0;

  bool operator==(const VocabEntry&) const = default;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

using StringIndex = std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>;

// Frequency-ordered word list. Index 0 is the most frequent word, so the
// "most frequent K words" are exactly the indices below K.
class Vocabulary {
 public:
  Vocabulary() = default;

  // `entries` must already be sorted by nonincreasing count, with unique
  // words and every count >= min_count. Throws ConfigError otherwise.
  Vocabulary(std::vector<VocabEntry> entries, std::uint64_t min_count);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const VocabEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::string& word(std::size_t i) const { return entries_[i].word; }
  std::uint64_t count(std::size_t i) const { return entries_[i].count; }
  std::span<const VocabEntry> entries() const { return entries_; }
  std::uint64_t min_count() const { return min_count_; }
  std::uint64_t total_tokens() const { return total_tokens_; }

  std::optional<std::size_t> find(std::string_view word) const;

  // Most frequent word with the same case fold.
  std::optional<std::size_t> find_folded(std::string_view word) const;

  // Exact match first, then find_folded.
  std::optional<std::size_t> resolve(std::string_view word) const;

  // "word<TAB>count" per line, in index order.
  void write_dump(std::ostream& out) const;
  static Vocabulary read_dump(std::istream& in, const std::string& source);

  bool operator==(const Vocabulary& other) const {
    return entries_ == other.entries_ && min_count_ == other.min_count_;
  }

 private:
  std::vector<VocabEntry> entries_;
  std::uint64_t min_count_ = 1;
  std::uint64_t total_tokens_ = 0;
  StringIndex index_;
  StringIndex folded_index_;
};

// Occurrence counter that remembers first-occurrence order. Counters built
// over consecutive shards merge into the same result as one sequential pass.
class VocabularyCounter {
 public:
  void add(std::string_view word);
  void add(const Sentence& sentence);
  // `later` must have counted input that follows this counter's input.
  void merge(const VocabularyCounter& later);
  Vocabulary finish(std::uint64_t min_count) const;

 private:
  StringIndex slot_;
  std::vector<VocabEntry> counts_;
};

// Throws ConfigError when min_count is 0. Empty input gives an empty vocabulary.
Vocabulary build_vocabulary(std::span<const Sentence> sentences, std::uint64_t min_count,
                            unsigned workers = 1);

// Sentences as vocabulary indices; out-of-vocabulary tokens are dropped.
using IndexedCorpus = std::vector<std::vector<std::uint32_t>>;

IndexedCorpus index_corpus(std::span<const Sentence> sentences, const Vocabulary& vocab);

// Reads one sentence per line, tokenizing each line. Blank results are kept
// out. Invalid UTF-8 throws ParseError naming the line.
std::vector<Sentence> read_sentences(std::istream& in, const std::string& source);

// Probability of keeping one occurrence of a word with relative frequency f
// under subsampling threshold t: sqrt(t / f) clamped to [0, 1].
double keep_probability(double word_frequency, double threshold);

inline constexpr double kDefaultNoisePower = 0.75;
inline constexpr std::size_t kDefaultNoiseTableSize = 10'000'000;

// Table of word indices where each word holds a share of slots proportional
// to count^power. Slot counts are within one of the exact proportion.
class NoiseTable {
 public:
  NoiseTable(std::span<const std::uint64_t> counts, double power = kDefaultNoisePower,
             std::size_t table_size = kDefaultNoiseTableSize);
  explicit NoiseTable(const Vocabulary& vocab, double power = kDefaultNoisePower,
                      std::size_t table_size = kDefaultNoiseTableSize);

  std::size_t size() const { return slots_.size(); }
  double power() const { return power_; }
  std::span<const std::uint32_t> slots() const { return slots_; }
  std::size_t distinct_words() const { return distinct_; }

  std::uint32_t sample(Rng& rng) const { return slots_[rng.below(slots_.size())]; }

  // Redraws until the result differs from `target`. Requires at least two
  // distinct words in the table.
  std::uint32_t sample_excluding(std::uint32_t target, Rng& rng) const {
    std::uint32_t w = sample(rng);
    while (w == target) w = sample(rng);
    return w;
  }

 private:
  std::vector<std::uint32_t> slots_;
  double power_;
  std::size_t distinct_ = 0;
};

}  // namespace wordvec
