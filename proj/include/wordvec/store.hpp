#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "wordvec/corpus.hpp"
#include "wordvec/error.hpp"

namespace wordvec {

template <typename T, typename U>
double dot_product(std::span<const T> u, std::span<const U> v) {
  if (u.size() != v.size()) throw DomainError("dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += static_cast<double>(u[i]) * static_cast<double>(v[i]);
  return s;
}

template <typename T>
double norm(std::span<const T> u) {
  return std::sqrt(dot_product(u, u));
}

// u.v / (|u||v|), 0 when either norm is 0. Throws DomainError on a dimension
// mismatch.
template <typename T, typename U>
double cosine(std::span<const T> u, std::span<const U> v) {
  if (u.size() != v.size()) throw DomainError("dimension mismatch");
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot_product(u, v) / (nu * nv);
}

inline double cosine(const std::vector<double>& u, const std::vector<double>& v) {
  return cosine(std::span<const double>(u), std::span<const double>(v));
}

// v / |v|; zero vectors stay zero.
std::vector<float> normalize(std::span<const float> v);

struct Neighbor {
  std::size_t index;
  double cosine;

  bool operator==(const Neighbor&) const = default;
};

// Vocabulary plus a dense V x dim matrix. Immutable once built; the unit-row
// view is computed on first use and shared by all readers.
class VectorStore {
 public:
  VectorStore() = default;
  VectorStore(Vocabulary vocab, std::size_t dim, std::vector<float> vectors);

  VectorStore(const VectorStore& other);
  VectorStore& operator=(const VectorStore& other);
  VectorStore(VectorStore&&) noexcept = default;
  VectorStore& operator=(VectorStore&&) noexcept = default;

  const Vocabulary& vocab() const { return vocab_; }
  std::size_t size() const { return vocab_.size(); }
  std::size_t dim() const { return dim_; }
  const std::string& word(std::size_t i) const { return vocab_.word(i); }
  const std::vector<float>& data() const { return vectors_; }

  std::span<const float> vector(std::size_t i) const { return {vectors_.data() + i * dim_, dim_}; }
  std::span<const float> unit(std::size_t i) const;

  // Top-k rows among indices [0, search_limit) by cosine to `query`, skipping
  // `exclude`. Ties go to the lower (more frequent) index.
  std::vector<Neighbor> nearest(std::span<const double> query, std::size_t k,
                                std::size_t search_limit,
                                std::span<const std::size_t> exclude = {}) const;

 private:
  const std::vector<float>& normalized() const;

  struct UnitCache {
    std::once_flag once;
    std::vector<float> rows;
  };

  Vocabulary vocab_;
  std::size_t dim_ = 0;
  std::vector<float> vectors_;
  mutable std::unique_ptr<UnitCache> cache_ = std::make_unique<UnitCache>();
};

// word2vec text format: "V dim" header, then "word v1 ... vdim" per line.
// Values use the shortest representation that reads back to the same float.
// Throws ConfigError for words containing whitespace.
void save_text(const VectorStore& store, std::ostream& out);
void save_text(const VectorStore& store, const std::string& path);

// Counts are reconstructed as V - rank so that file order is preserved.
VectorStore load_text(std::istream& in, const std::string& source);
VectorStore load_text(const std::string& path);

}  // namespace wordvec
