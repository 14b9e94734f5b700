#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wordvec/config.hpp"
#include "wordvec/corpus.hpp"
#include "wordvec/error.hpp"
#include "wordvec/random.hpp"
#include "wordvec/store.hpp"
#include "wordvec/subword.hpp"

namespace wordvec {

// Input rows 0..V-1 are words, rows V..V+B-1 are n-gram buckets (B = 0
// without subwords). Output rows are words only.
template <typename Real>
struct ParameterMatrices {
  std::size_t dim = 0;
  std::size_t words = 0;
  std::size_t buckets = 0;
  std::vector<Real> input;
  std::vector<Real> output;

  std::span<Real> input_row(std::size_t r) { return {input.data() + r * dim, dim}; }
  std::span<const Real> input_row(std::size_t r) const { return {input.data() + r * dim, dim}; }
  std::span<Real> output_row(std::size_t r) { return {output.data() + r * dim, dim}; }
  std::span<const Real> output_row(std::size_t r) const { return {output.data() + r * dim, dim}; }

  bool all_finite() const {
    for (const Real x : input) {
      if (!std::isfinite(x)) return false;
    }
    for (const Real x : output) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }
};

// Input entries uniform in [-0.5/dim, 0.5/dim] drawn from config.seed;
// output entries zero.
template <typename Real>
ParameterMatrices<Real> init_parameters(const ModelConfig& config, std::size_t vocab_size) {
  if (vocab_size < 1) throw ConfigError("cannot initialize parameters for an empty vocabulary");
  ParameterMatrices<Real> p;
  p.dim = config.dim;
  p.words = vocab_size;
  p.buckets = config.subword ? config.buckets : 0;
  p.input.resize((p.words + p.buckets) * p.dim);
  p.output.assign(p.words * p.dim, Real(0));
  Rng rng = Rng::stream(config.seed, 0);
  const double scale = 1.0 / static_cast<double>(p.dim);
  for (auto& x : p.input) x = static_cast<Real>((rng.uniform() - 0.5) * scale);
  return p;
}

// initial_lr * max(1 - progress, 1e-4).
double lr_schedule(double initial_lr, double progress);

namespace detail {

template <typename Real>
Real dot(const Real* a, const Real* b, std::size_t n) {
  constexpr std::size_t kLanes = 8;
  Real acc[kLanes] = {};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) acc[k] += a[i + k] * b[i + k];
  }
  Real tail = 0;
  for (; i < n; ++i) tail += a[i] * b[i];
  Real sum = tail;
  for (std::size_t k = 0; k < kLanes; ++k) sum += acc[k];
  return sum;
}

template <typename Real>
void axpy(Real alpha, const Real* x, Real* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// -ln(sigmoid(-x)), stable for large |x|.
inline double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace detail

// One negative-sampling prediction. Returns the loss before the update,
//   -ln s(u.v_target) - sum_n ln s(-u.v_n),
// moves every touched output row by -lr * dL/dv and adds -lr * dL/du into
// `center_update`. All gradients are taken at the pre-update point, so the
// change is exactly one SGD step even when noise words repeat.
template <typename Real>
double negative_sampling_step(std::span<const Real> center, std::uint32_t target,
                              std::span<const std::uint32_t> noise, ParameterMatrices<Real>& params,
                              Real lr, std::span<Real> center_update) {
  const std::size_t dim = params.dim;
  const std::size_t count = noise.size() + 1;
  constexpr std::size_t kInline = 32;
  double inline_coeffs[kInline];
  std::vector<double> heap_coeffs;
  double* coeffs = inline_coeffs;
  if (count > kInline) {
    heap_coeffs.resize(count);
    coeffs = heap_coeffs.data();
  }

  double loss = 0;
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint32_t word = j == 0 ? target : noise[j - 1];
    const Real* v = params.output.data() + static_cast<std::size_t>(word) * dim;
    const double score = static_cast<double>(detail::dot(center.data(), v, dim));
    if (!std::isfinite(score)) throw NumericError("non-finite score in negative-sampling step");
    double grad;  // dL/dscore
    if (j == 0) {
      loss += detail::softplus(-score);
      grad = detail::sigmoid(score) - 1.0;
    } else {
      loss += detail::softplus(score);
      grad = detail::sigmoid(score);
    }
    coeffs[j] = -static_cast<double>(lr) * grad;
    detail::axpy(static_cast<Real>(coeffs[j]), v, center_update.data(), dim);
  }
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint32_t word = j == 0 ? target : noise[j - 1];
    Real* v = params.output.data() + static_cast<std::size_t>(word) * dim;
    detail::axpy(static_cast<Real>(coeffs[j]), center.data(), v, dim);
  }
  return loss;
}

// Mean of the word's input rows (the word row alone without subwords).
template <typename Real>
void word_representation(std::size_t word, const ParameterMatrices<Real>& params,
                         const InputRows& rows, std::span<Real> out) {
  const auto parts = rows.of(word);
  std::fill(out.begin(), out.end(), Real(0));
  for (const std::uint32_t r : parts) {
    detail::axpy(Real(1), params.input.data() + static_cast<std::size_t>(r) * params.dim, out.data(),
                 params.dim);
  }
  const Real n = static_cast<Real>(parts.size());
  for (auto& x : out) x /= n;
}

template <typename Real>
std::vector<Real> word_representation(std::size_t word, const ParameterMatrices<Real>& params,
                                      const InputRows& rows) {
  std::vector<Real> out(params.dim);
  word_representation(word, params, rows, std::span<Real>(out));
  return out;
}

struct StepLoss {
  double loss = 0;
  std::size_t predictions = 0;
};

// Per-worker scratch space.
template <typename Real>
struct StepBuffers {
  std::vector<Real> center;
  std::vector<Real> update;
  std::vector<Real> scratch;
  std::vector<std::uint32_t> noise;

  StepBuffers(std::size_t dim, std::size_t negatives)
      : center(dim), update(dim), scratch(dim), noise(negatives) {}
};

template <typename Real>
struct StepContext {
  ParameterMatrices<Real>& params;
  const InputRows& rows;
  StepBuffers<Real>& buffers;
};

namespace detail {

template <typename Real>
void distribute(ParameterMatrices<Real>& params, const InputRows& rows, std::size_t word,
                std::span<const Real> update, Real weight) {
  const auto parts = rows.of(word);
  const Real scale = weight / static_cast<Real>(parts.size());
  for (const std::uint32_t r : parts) {
    axpy(scale, update.data(), params.input.data() + static_cast<std::size_t>(r) * params.dim,
         params.dim);
  }
}

}  // namespace detail

// CBOW prediction of sentence[position] from the mean representation of the
// words within `width` positions on either side. `draw_noise(target, out)`
// fills `out` with noise words. The gradient on the mean is shared equally
// by the contributing rows.
template <typename Real, typename NoiseFn>
StepLoss cbow_step(StepContext<Real> ctx, std::span<const std::uint32_t> sentence,
                   std::size_t position, std::size_t width, Real lr, NoiseFn&& draw_noise) {
  const std::size_t begin = position >= width ? position - width : 0;
  const std::size_t end = std::min(sentence.size(), position + width + 1);
  const std::size_t context = end - begin - 1;
  if (context == 0) return {};

  auto& buf = ctx.buffers;
  const std::size_t dim = ctx.params.dim;
  std::fill(buf.center.begin(), buf.center.end(), Real(0));
  for (std::size_t c = begin; c < end; ++c) {
    if (c == position) continue;
    word_representation(sentence[c], ctx.params, ctx.rows, std::span<Real>(buf.scratch));
    detail::axpy(Real(1), buf.scratch.data(), buf.center.data(), dim);
  }
  const Real n = static_cast<Real>(context);
  for (auto& x : buf.center) x /= n;

  const std::uint32_t target = sentence[position];
  draw_noise(target, buf.noise);
  std::fill(buf.update.begin(), buf.update.end(), Real(0));
  const double loss = negative_sampling_step<Real>(buf.center, target, buf.noise, ctx.params, lr,
                                                   std::span<Real>(buf.update));
  const Real weight = Real(1) / n;
  for (std::size_t c = begin; c < end; ++c) {
    if (c == position) continue;
    detail::distribute<Real>(ctx.params, ctx.rows, sentence[c], buf.update, weight);
  }
  return {loss, 1};
}

// Skip-gram: one prediction per context word within `width`, each from the
// current representation of the center word.
template <typename Real, typename NoiseFn>
StepLoss skipgram_step(StepContext<Real> ctx, std::span<const std::uint32_t> sentence,
                       std::size_t position, std::size_t width, Real lr, NoiseFn&& draw_noise) {
  const std::size_t begin = position >= width ? position - width : 0;
  const std::size_t end = std::min(sentence.size(), position + width + 1);
  auto& buf = ctx.buffers;
  const std::uint32_t center_word = sentence[position];
  StepLoss result;
  for (std::size_t c = begin; c < end; ++c) {
    if (c == position) continue;
    word_representation(center_word, ctx.params, ctx.rows, std::span<Real>(buf.center));
    const std::uint32_t target = sentence[c];
    draw_noise(target, buf.noise);
    std::fill(buf.update.begin(), buf.update.end(), Real(0));
    result.loss += negative_sampling_step<Real>(buf.center, target, buf.noise, ctx.params, lr,
                                                std::span<Real>(buf.update));
    ++result.predictions;
    detail::distribute<Real>(ctx.params, ctx.rows, center_word, buf.update, Real(1));
  }
  return result;
}

// Samples the window width uniformly in 1..config.window and noise words from
// `noise` (redrawing the target), then runs the explicit-width step.
template <typename Real>
StepLoss train_position(StepContext<Real> ctx, const ModelConfig& config, const NoiseTable& noise,
                        Rng& rng, std::span<const std::uint32_t> sentence, std::size_t position,
                        Real lr) {
  const auto width = static_cast<std::size_t>(rng.between(1, config.window));
  auto draw = [&](std::uint32_t target, std::vector<std::uint32_t>& out) {
    for (auto& w : out) w = noise.sample_excluding(target, rng);
  };
  if (config.mode == Mode::kCbow) return cbow_step(ctx, sentence, position, width, lr, draw);
  return skipgram_step(ctx, sentence, position, width, lr, draw);
}

struct TrainingProgress {
  std::size_t epoch = 0;  // 1-based
  std::size_t epochs = 0;
  double progress = 0;  // fraction of all epochs
  double lr = 0;
  double tokens_per_second = 0;
  double loss = 0;  // running mean, or the epoch mean when epoch_end is set
  bool epoch_end = false;
};

using ProgressCallback = std::function<void(const TrainingProgress&)>;

struct TrainingResult {
  VectorStore store;
  std::vector<double> epoch_losses;  // mean loss per prediction, per epoch
  std::uint64_t tokens_processed = 0;
  std::uint64_t tokens_trained = 0;  // after subsampling
};

// Runs config.epochs passes of SGD over `corpus` (indices into `vocab`) and
// returns word representations for every vocabulary word. With workers > 1
// the corpus is split into contiguous shards that update shared parameters
// without locking.
TrainingResult train(const IndexedCorpus& corpus, const Vocabulary& vocab, const ModelConfig& config,
                     const ProgressCallback& progress = {});

}  // namespace wordvec
