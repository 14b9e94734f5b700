#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordvec {

class Vocabulary;
struct ModelConfig;

inline constexpr char kWordBegin = '<';
inline constexpr char kWordEnd = '>';

// Character n-grams of "<word>" with lengths minn..maxn, counted in Unicode
// scalar values, ordered by start position then length. The n-gram equal to
// the whole wrapped word is not emitted.
std::vector<std::string> extract_ngrams(std::string_view word, std::size_t minn, std::size_t maxn);

// 32-bit FNV-1a over the UTF-8 bytes.
std::uint32_t fnv1a_32(std::string_view bytes);

// Bucket in [0, buckets). buckets must be positive.
std::size_t hash_ngram(std::string_view ngram, std::size_t buckets);

// For every vocabulary word, the input-matrix rows whose mean forms its
// representation: the word's own row first, then V + bucket for each n-gram
// in extraction order (duplicates kept). Without subwords it is just the word
// row.
class InputRows {
 public:
  InputRows(const Vocabulary& vocab, const ModelConfig& config);

  std::span<const std::uint32_t> of(std::size_t word) const {
    return std::span<const std::uint32_t>(rows_).subspan(offsets_[word], offsets_[word + 1] - offsets_[word]);
  }

  std::size_t words() const { return offsets_.size() - 1; }
  std::size_t total_rows() const { return total_rows_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> rows_;
  std::size_t total_rows_ = 0;
};

}  // namespace wordvec
