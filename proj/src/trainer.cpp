#include "wordvec/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <string>
#include <thread>

namespace wordvec {

double lr_schedule(double initial_lr, double progress) {
  return initial_lr * std::max(1.0 - std::clamp(progress, 0.0, 1.0), 1e-4);
}

namespace {

constexpr std::uint64_t kFlushTokens = 10'000;
constexpr std::uint64_t kReportTokens = 200'000;

struct Shard {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Contiguous sentence ranges with roughly equal token counts.
std::vector<Shard> make_shards(const IndexedCorpus& corpus, std::uint64_t total, unsigned workers) {
  std::vector<Shard> shards;
  std::size_t begin = 0;
  std::uint64_t seen = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t goal = total * (w + 1) / workers;
    std::size_t end = begin;
    while (end < corpus.size() && (seen < goal || w + 1 == workers)) seen += corpus[end++].size();
    shards.push_back({begin, end});
    begin = end;
  }
  return shards;
}

struct EpochTally {
  double loss = 0;
  std::uint64_t predictions = 0;
  std::uint64_t trained = 0;
};

class Run {
 public:
  Run(const IndexedCorpus& corpus, const Vocabulary& vocab, const ModelConfig& config,
      const ProgressCallback& progress)
      : corpus_(corpus),
        vocab_(vocab),
        config_(config),
        progress_(progress),
        rows_(vocab, config),
        noise_(vocab, kDefaultNoisePower, std::max(config.noise_table_size, vocab.size())),
        params_(init_parameters<float>(config, vocab.size())) {
    for (const auto& s : corpus_) total_tokens_ += s.size();
    keep_.reserve(vocab.size());
    const double total = static_cast<double>(vocab.total_tokens());
    for (const auto& e : vocab.entries()) {
      keep_.push_back(keep_probability(static_cast<double>(e.count) / total, config.subsample_t));
    }
  }

  std::uint64_t total_tokens() const { return total_tokens_; }
  const NoiseTable& noise() const { return noise_; }

  TrainingResult run() {
    const unsigned workers = config_.workers;
    const auto shards = make_shards(corpus_, total_tokens_, workers);
    started_ = std::chrono::steady_clock::now();
    TrainingResult result;

    for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
      std::vector<EpochTally> tallies(workers);
      std::vector<std::exception_ptr> errors(workers);
      auto work = [&](unsigned w) {
        try {
          tallies[w] = run_shard(shards[w], epoch, w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      };
      if (workers == 1) {
        work(0);
      } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }

      EpochTally sum;
      for (const auto& t : tallies) {
        sum.loss += t.loss;
        sum.predictions += t.predictions;
        sum.trained += t.trained;
      }
      if (sum.trained == 0) throw DomainError("corpus is empty after subsampling");
      result.tokens_trained += sum.trained;
      const double mean = sum.predictions ? sum.loss / static_cast<double>(sum.predictions) : 0.0;
      result.epoch_losses.push_back(mean);
      if (progress_) {
        TrainingProgress p = snapshot(epoch);
        p.loss = mean;
        p.epoch_end = true;
        progress_(p);
      }
    }
    result.tokens_processed = processed_.load();

    if (!params_.all_finite()) throw NumericError("non-finite parameters after training");

    std::vector<float> vectors(vocab_.size() * params_.dim);
    for (std::size_t w = 0; w < vocab_.size(); ++w) {
      word_representation(w, params_, rows_,
                          std::span<float>(vectors.data() + w * params_.dim, params_.dim));
    }
    result.store = VectorStore(vocab_, params_.dim, std::move(vectors));
    return result;
  }

 private:
  double current_lr() const {
    const double denom = static_cast<double>(config_.epochs) * static_cast<double>(total_tokens_);
    return lr_schedule(config_.learning_rate(), static_cast<double>(processed_.load()) / denom);
  }

  TrainingProgress snapshot(std::size_t epoch) const {
    TrainingProgress p;
    p.epoch = epoch + 1;
    p.epochs = config_.epochs;
    const double done = static_cast<double>(processed_.load());
    p.progress = done / (static_cast<double>(config_.epochs) * static_cast<double>(total_tokens_));
    p.lr = current_lr();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    p.tokens_per_second = secs > 0 ? done / secs : 0.0;
    return p;
  }

  EpochTally run_shard(Shard shard, std::size_t epoch, unsigned worker) {
    Rng rng = Rng::stream(config_.seed, worker + 1, epoch);
    StepBuffers<float> buffers(params_.dim, config_.negatives);
    StepContext<float> ctx{params_, rows_, buffers};
    EpochTally tally;
    std::vector<std::uint32_t> kept;
    std::uint64_t pending = 0;
    std::uint64_t since_report = 0;
    float lr = static_cast<float>(current_lr());

    for (std::size_t s = shard.begin; s < shard.end; ++s) {
      const auto& sentence = corpus_[s];
      kept.clear();
      for (const std::uint32_t w : sentence) {
        if (rng.uniform() < keep_[w]) kept.push_back(w);
      }
      tally.trained += kept.size();
      for (std::size_t pos = 0; pos < kept.size(); ++pos) {
        StepLoss step;
        try {
          step = train_position<float>(ctx, config_, noise_, rng, kept, pos, lr);
        } catch (const NumericError& e) {
          throw NumericError(std::string(e.what()) + " (epoch " + std::to_string(epoch + 1) +
                             ", step " + std::to_string(processed_.load() + pending) + ")");
        }
        tally.loss += step.loss;
        tally.predictions += step.predictions;
      }
      pending += sentence.size();
      if (pending >= kFlushTokens) {
        processed_ += pending;
        since_report += pending;
        pending = 0;
        lr = static_cast<float>(current_lr());
        if (worker == 0 && progress_ && since_report >= kReportTokens) {
          since_report = 0;
          TrainingProgress p = snapshot(epoch);
          p.loss = tally.predictions ? tally.loss / static_cast<double>(tally.predictions) : 0.0;
          progress_(p);
        }
      }
    }
    processed_ += pending;
    return tally;
  }

  const IndexedCorpus& corpus_;
  const Vocabulary& vocab_;
  const ModelConfig& config_;
  const ProgressCallback& progress_;
  InputRows rows_;
  NoiseTable noise_;
  ParameterMatrices<float> params_;
  std::vector<double> keep_;
  std::uint64_t total_tokens_ = 0;
  std::atomic<std::uint64_t> processed_{0};
  std::chrono::steady_clock::time_point started_;
};

}  // namespace

TrainingResult train(const IndexedCorpus& corpus, const Vocabulary& vocab, const ModelConfig& config,
                     const ProgressCallback& progress) {
  config.validate();
  if (vocab.empty()) throw ConfigError("cannot train with an empty vocabulary");
  for (const auto& s : corpus) {
    for (const std::uint32_t w : s) {
      if (w >= vocab.size()) throw ConfigError("corpus refers to a word outside the vocabulary");
    }
  }
  Run run(corpus, vocab, config, progress);
  if (run.total_tokens() == 0) throw DomainError("corpus is empty");
  if (run.noise().distinct_words() < 2) {
    throw ConfigError("negative sampling needs at least two distinct words in the noise table");
  }
  return run.run();
}

}  // namespace wordvec
