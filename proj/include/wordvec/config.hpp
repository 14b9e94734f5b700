#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace wordvec {

enum class Mode { kCbow, kSkipgram };

std::string_view to_string(Mode mode);

// Training hyperparameters. Serialized as a flat key=value file whose keys are
// the field names below; unknown keys are rejected.
struct ModelConfig {
  Mode mode = Mode::kSkipgram;
  bool subword = false;
  std::size_t dim = 300;
  std::size_t window = 5;
  std::size_t negatives = 5;
  // Unset means 0.025 for skip-gram and 0.05 for CBOW.
  std::optional<double> initial_lr;
  std::size_t epochs = 5;
  std::uint64_t min_count = 10;
  double subsample_t = 1e-4;
  std::size_t minn = 3;
  std::size_t maxn = 6;
  std::size_t buckets = 2'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t noise_table_size = 10'000'000;

  double learning_rate() const;

  // Throws ConfigError on the first violated constraint.
  void validate() const;

  // Sets one key from its text form. Throws ConfigError naming the key when
  // the key is unknown or the value does not parse.
  void set(std::string_view key, std::string_view value);

  // Applies one of the model names "cbow", "skipgram", "fasttext-skip",
  // "fasttext-cbow" (case-insensitive; "skip-gram" and "fastText-Skip" style
  // spellings are accepted).
  void apply_model_name(std::string_view name);

  // "CBOW", "Skip-gram", "fastText-Skip" or "fastText-CBOW".
  std::string model_name() const;

  void write(std::ostream& out) const;
  static ModelConfig read(std::istream& in, const std::string& source);
  // Applies every key of a config file on top of this config.
  void merge_from(std::istream& in, const std::string& source);
};

}  // namespace wordvec
