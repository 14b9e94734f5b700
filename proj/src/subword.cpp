#include "wordvec/subword.hpp"

#include <limits>

#include "wordvec/config.hpp"
#include "wordvec/corpus.hpp"
#include "wordvec/error.hpp"
#include "wordvec/text.hpp"

namespace wordvec {

std::vector<std::string> extract_ngrams(std::string_view word, std::size_t minn, std::size_t maxn) {
  std::string wrapped;
  wrapped.reserve(word.size() + 2);
  wrapped += kWordBegin;
  wrapped += word;
  wrapped += kWordEnd;
  const auto cps = decode_utf8(wrapped);
  const std::size_t n = cps.size();

  std::vector<std::string> out;
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t len = minn; len <= maxn && start + len <= n; ++len) {
      if (start == 0 && len == n) continue;
      const std::size_t from = cps[start].offset;
      const std::size_t to = cps[start + len - 1].offset + cps[start + len - 1].length;
      out.push_back(wrapped.substr(from, to - from));
    }
  }
  return out;
}

std::uint32_t fnv1a_32(std::string_view bytes) {
  std::uint32_t h = 2166136261u;
  for (const char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 16777619u;
  }
  return h;
}

std::size_t hash_ngram(std::string_view ngram, std::size_t buckets) {
  return static_cast<std::size_t>(fnv1a_32(ngram)) % buckets;
}

InputRows::InputRows(const Vocabulary& vocab, const ModelConfig& config) {
  const std::size_t v = vocab.size();
  const std::size_t b = config.subword ? config.buckets : 0;
  if (v + b > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("vocabulary plus buckets exceeds the supported row count");
  }
  total_rows_ = v + b;
  offsets_.reserve(v + 1);
  offsets_.push_back(0);
  for (std::size_t w = 0; w < v; ++w) {
    rows_.push_back(static_cast<std::uint32_t>(w));
    if (config.subword) {
      for (const auto& g : extract_ngrams(vocab.word(w), config.minn, config.maxn)) {
        rows_.push_back(static_cast<std::uint32_t>(v + hash_ngram(g, b)));
      }
    }
    offsets_.push_back(rows_.size());
  }
}

}  // namespace wordvec
