#include "wordvec/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>

#include "wordvec/error.hpp"
#include "wordvec/text.hpp"

namespace wordvec {

bool admits_sentence(const Sentence& sentence, std::size_t min_tokens) {
  return sentence.size() >= min_tokens;
}

std::vector<Sentence> filter_sentences(std::vector<Sentence> sentences, std::size_t min_tokens) {
  std::erase_if(sentences, [&](const Sentence& s) { return !admits_sentence(s, min_tokens); });
  return sentences;
}

Vocabulary::Vocabulary(std::vector<VocabEntry> entries, std::uint64_t min_count)
    : entries_(std::move(entries)), min_count_(min_count) {
  if (min_count_ == 0) throw ConfigError("min_count must be at least 1");
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.word.empty()) throw ConfigError("vocabulary word at index " + std::to_string(i) + " is empty");
    if (e.count < min_count_) {
      throw ConfigError("vocabulary word '" + e.word + "' has count below min_count");
    }
    if (i > 0 && entries_[i - 1].count < e.count) {
      throw ConfigError("vocabulary is not sorted by count at word '" + e.word + "'");
    }
    if (!index_.emplace(e.word, i).second) {
      throw ConfigError("duplicate vocabulary word '" + e.word + "'");
    }
    total_tokens_ += e.count;
    folded_index_.emplace(fold_case(e.word), i);  // keeps the first (most frequent) index
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view word) const {
  if (auto it = index_.find(word); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::find_folded(std::string_view word) const {
  if (auto it = folded_index_.find(fold_case(word)); it != folded_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::resolve(std::string_view word) const {
  if (auto exact = find(word)) return exact;
  return find_folded(word);
}

void Vocabulary::write_dump(std::ostream& out) const {
  for (const auto& e : entries_) out << e.word << '\t' << e.count << '\n';
}

Vocabulary Vocabulary::read_dump(std::istream& in, const std::string& source) {
  std::vector<VocabEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2) throw ParseError(source, line_no, "expected 'word<TAB>count'");
    std::uint64_t count = 0;
    const auto* end = fields[1].data() + fields[1].size();
    auto [ptr, ec] = std::from_chars(fields[1].data(), end, count);
    if (ec != std::errc() || ptr != end || count == 0) {
      throw ParseError(source, line_no, "invalid count '" + std::string(fields[1]) + "'");
    }
    entries.push_back({std::string(fields[0]), count});
  }
  try {
    return Vocabulary(std::move(entries), 1);
  } catch (const ConfigError& e) {
    throw ParseError(source, line_no, e.what());
  }
}

void VocabularyCounter::add(std::string_view word) {
  auto it = slot_.find(word);
  if (it == slot_.end()) {
    it = slot_.emplace(std::string(word), counts_.size()).first;
    counts_.push_back({std::string(word), 0});
  }
  ++counts_[it->second].count;
}

void VocabularyCounter::add(const Sentence& sentence) {
  for (const auto& w : sentence) add(w);
}

void VocabularyCounter::merge(const VocabularyCounter& later) {
  for (const auto& e : later.counts_) {
    auto it = slot_.find(e.word);
    if (it == slot_.end()) {
      slot_.emplace(e.word, counts_.size());
      counts_.push_back(e);
    } else {
      counts_[it->second].count += e.count;
    }
  }
}

Vocabulary VocabularyCounter::finish(std::uint64_t min_count) const {
  if (min_count == 0) throw ConfigError("min_count must be at least 1");
  std::vector<VocabEntry> kept;
  for (const auto& e : counts_) {
    if (e.count >= min_count) kept.push_back(e);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const VocabEntry& a, const VocabEntry& b) { return a.count > b.count; });
  return Vocabulary(std::move(kept), min_count);
}

Vocabulary build_vocabulary(std::span<const Sentence> sentences, std::uint64_t min_count,
                            unsigned workers) {
  if (min_count == 0) throw ConfigError("min_count must be at least 1");
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(sentences.size())));
  std::vector<VocabularyCounter> shards(workers);
  const std::size_t chunk = (sentences.size() + workers - 1) / std::max(1u, workers);
  auto count_shard = [&](unsigned w) {
    const std::size_t begin = std::min(sentences.size(), w * chunk);
    const std::size_t end = std::min(sentences.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i) shards[w].add(sentences[i]);
  };
  if (workers == 1) {
    count_shard(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(count_shard, w);
  }
  for (unsigned w = 1; w < workers; ++w) shards[0].merge(shards[w]);
  return shards[0].finish(min_count);
}

IndexedCorpus index_corpus(std::span<const Sentence> sentences, const Vocabulary& vocab) {
  IndexedCorpus out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    std::vector<std::uint32_t> ids;
    ids.reserve(s.size());
    for (const auto& w : s) {
      if (auto i = vocab.find(w)) ids.push_back(static_cast<std::uint32_t>(*i));
    }
    out.push_back(std::move(ids));
  }
  return out;
}

std::vector<Sentence> read_sentences(std::istream& in, const std::string& source) {
  std::vector<Sentence> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      auto tokens = tokenize_line(line);
      if (!tokens.empty()) out.push_back(std::move(tokens));
    } catch (const DecodeError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

double keep_probability(double word_frequency, double threshold) {
  if (!(word_frequency > 0.0) || word_frequency > 1.0) {
    throw DomainError("word frequency must lie in (0, 1]");
  }
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw DomainError("subsampling threshold must be positive");
  }
  return std::clamp(std::sqrt(threshold / word_frequency), 0.0, 1.0);
}

NoiseTable::NoiseTable(std::span<const std::uint64_t> counts, double power, std::size_t table_size)
    : power_(power) {
  if (counts.empty()) throw ConfigError("noise table needs a nonempty vocabulary");
  if (table_size < counts.size()) {
    throw ConfigError("noise table size " + std::to_string(table_size) +
                      " is smaller than the vocabulary (" + std::to_string(counts.size()) + ")");
  }
  if (!std::isfinite(power)) throw ConfigError("noise power must be finite");

  std::vector<long double> weights(counts.size());
  long double total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    weights[i] = std::pow(static_cast<long double>(counts[i]), static_cast<long double>(power));
    total += weights[i];
  }

  slots_.resize(table_size);
  const auto size = static_cast<long double>(table_size);
  long double cumulative = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    cumulative += weights[i];
    std::size_t end = i + 1 == counts.size()
                          ? table_size
                          : static_cast<std::size_t>(std::llround(size * cumulative / total));
    end = std::clamp(end, begin, table_size);
    if (end > begin) ++distinct_;
    std::fill(slots_.begin() + static_cast<std::ptrdiff_t>(begin),
              slots_.begin() + static_cast<std::ptrdiff_t>(end), static_cast<std::uint32_t>(i));
    begin = end;
  }
}

namespace {

std::vector<std::uint64_t> counts_of(const Vocabulary& vocab) {
  std::vector<std::uint64_t> counts;
  counts.reserve(vocab.size());
  for (const auto& e : vocab.entries()) counts.push_back(e.count);
  return counts;
}

}  // namespace

NoiseTable::NoiseTable(const Vocabulary& vocab, double power, std::size_t table_size)
    : NoiseTable(counts_of(vocab), power, table_size) {}

}  // namespace wordvec
