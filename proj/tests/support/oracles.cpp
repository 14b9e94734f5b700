#include "oracles.hpp"

#include <cmath>

#include "wordvec/text.hpp"

namespace wordvec::testing {

std::optional<std::size_t> scan_lookup(const VectorStore& store, const std::string& word, std::size_t limit) {
  const std::size_t n = std::min(limit, store.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (store.word(i) == word) return i;
  }
  // The folded match is the first index overall that shares the fold; it only
  // counts if that index is within the limit.
  const auto folded = fold_case(word);
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (fold_case(store.word(i)) == folded) {
      if (i < n) return i;
      break;
    }
  }
  return std::nullopt;
}

namespace {

std::vector<double> unit_row(const VectorStore& store, std::size_t i) {
  const auto v = store.vector(i);
  double sq = 0;
  for (const float x : v) sq += static_cast<double>(x) * static_cast<double>(x);
  const double n = std::sqrt(sq);
  std::vector<double> out(v.size());
  for (std::size_t d = 0; d < v.size(); ++d) {
    out[d] = n == 0 ? static_cast<double>(v[d]) : static_cast<double>(static_cast<float>(v[d] / n));
  }
  return out;
}

}  // namespace

AnalogyAnswer brute_force_analogy(const VectorStore& store, const AnalogyQuestion& q, std::size_t limit) {
  const auto a = scan_lookup(store, q.a, limit);
  const auto b = scan_lookup(store, q.b, limit);
  const auto c = scan_lookup(store, q.c, limit);
  if (!a || !b || !c) return {AnalogyAnswer::Status::kOov, 0};
  const auto ua = unit_row(store, *a);
  const auto ub = unit_row(store, *b);
  const auto uc = unit_row(store, *c);
  std::vector<double> target(store.dim());
  double tn = 0;
  for (std::size_t d = 0; d < target.size(); ++d) {
    target[d] = ub[d] - ua[d] + uc[d];
    tn += target[d] * target[d];
  }
  tn = std::sqrt(tn);
  std::optional<std::size_t> best;
  double best_score = 0;
  for (std::size_t i = 0; i < std::min(limit, store.size()); ++i) {
    if (i == *a || i == *b || i == *c) continue;
    double score = 0;
    if (tn > 0) {
      const auto u = unit_row(store, i);
      for (std::size_t d = 0; d < u.size(); ++d) score += target[d] * u[d];
      score /= tn;
    }
    if (!best || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  if (!best) return {AnalogyAnswer::Status::kNoCandidate, 0};
  return {AnalogyAnswer::Status::kPredicted, *best};
}

double reference_spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<long double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::size_t less = 0, equal = 0;
      for (const double x : v) {
        if (x < v[i]) ++less;
        if (x == v[i]) ++equal;
      }
      r[i] = static_cast<long double>(less) + (static_cast<long double>(equal) + 1) / 2;
    }
    return r;
  };
  const auto rx = ranks(xs);
  const auto ry = ranks(ys);
  const auto n = static_cast<long double>(xs.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

double reference_loss(const ParameterMatrices<double>& params, const InputRows& rows,
                      std::span<const std::uint32_t> context_words, std::uint32_t target,
                      std::span<const std::uint32_t> noise) {
  const std::size_t dim = params.dim;
  std::vector<double> u(dim, 0.0);
  for (const std::uint32_t w : context_words) {
    const auto parts = rows.of(w);
    for (const std::uint32_t r : parts) {
      for (std::size_t d = 0; d < dim; ++d) {
        u[d] += params.input[r * dim + d] / static_cast<double>(parts.size());
      }
    }
  }
  for (auto& x : u) x /= static_cast<double>(context_words.size());
  auto score = [&](std::uint32_t w) {
    double s = 0;
    for (std::size_t d = 0; d < dim; ++d) s += u[d] * params.output[w * dim + d];
    return s;
  };
  double loss = std::log1p(std::exp(-score(target)));
  for (const std::uint32_t n : noise) loss += std::log1p(std::exp(score(n)));
  return loss;
}

}  // namespace wordvec::testing
