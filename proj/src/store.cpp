#include "wordvec/store.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>

#include "wordvec/text.hpp"

namespace wordvec {

std::vector<float> normalize(std::span<const float> v) {
  std::vector<float> out(v.begin(), v.end());
  const double n = norm(v);
  if (n == 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<float>(static_cast<double>(v[i]) / n);
  return out;
}

VectorStore::VectorStore(Vocabulary vocab, std::size_t dim, std::vector<float> vectors)
    : vocab_(std::move(vocab)), dim_(dim), vectors_(std::move(vectors)) {
  if (vectors_.size() != vocab_.size() * dim_) {
    throw ConfigError("vector matrix has " + std::to_string(vectors_.size()) + " entries, expected " +
                      std::to_string(vocab_.size() * dim_));
  }
}

VectorStore::VectorStore(const VectorStore& other)
    : vocab_(other.vocab_), dim_(other.dim_), vectors_(other.vectors_) {}

VectorStore& VectorStore::operator=(const VectorStore& other) {
  if (this != &other) {
    vocab_ = other.vocab_;
    dim_ = other.dim_;
    vectors_ = other.vectors_;
    cache_ = std::make_unique<UnitCache>();
  }
  return *this;
}

const std::vector<float>& VectorStore::normalized() const {
  std::call_once(cache_->once, [this] {
    auto& rows = cache_->rows;
    rows.resize(vectors_.size());
    for (std::size_t i = 0; i < size(); ++i) {
      const auto unit_row = normalize(vector(i));
      std::copy(unit_row.begin(), unit_row.end(), rows.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    }
  });
  return cache_->rows;
}

std::span<const float> VectorStore::unit(std::size_t i) const {
  return {normalized().data() + i * dim_, dim_};
}

std::vector<Neighbor> VectorStore::nearest(std::span<const double> query, std::size_t k,
                                           std::size_t search_limit,
                                           std::span<const std::size_t> exclude) const {
  if (query.size() != dim_) throw DomainError("query dimension mismatch");
  std::vector<Neighbor> out;
  if (k == 0) return out;
  const std::size_t limit = std::min(search_limit, size());
  const auto& rows = normalized();
  const double qn = norm(query);

  // Worst retained candidate on top.
  auto better = [](const Neighbor& a, const Neighbor& b) {
    return a.cosine > b.cosine || (a.cosine == b.cosine && a.index < b.index);
  };
  std::priority_queue<Neighbor, std::vector<Neighbor>, decltype(better)> heap(better);
  for (std::size_t i = 0; i < limit; ++i) {
    if (std::find(exclude.begin(), exclude.end(), i) != exclude.end()) continue;
    double score = 0;
    if (qn > 0) {
      const float* row = rows.data() + i * dim_;
      double s = 0;
      for (std::size_t d = 0; d < dim_; ++d) s += query[d] * static_cast<double>(row[d]);
      score = s / qn;
    }
    const Neighbor cand{i, score};
    if (heap.size() < k) {
      heap.push(cand);
    } else if (better(cand, heap.top())) {
      heap.pop();
      heap.push(cand);
    }
  }
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

bool has_whitespace(std::string_view word) {
  for (const auto& cp : decode_utf8(word)) {
    if (is_whitespace(cp.value)) return true;
  }
  return false;
}

}  // namespace

void save_text(const VectorStore& store, std::ostream& out) {
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.word(i).empty() || has_whitespace(store.word(i))) {
      throw ConfigError("word '" + store.word(i) + "' cannot be written in text format");
    }
  }
  out << store.size() << ' ' << store.dim() << '\n';
  std::string line;
  std::array<char, 32> buf;
  for (std::size_t i = 0; i < store.size(); ++i) {
    line = store.word(i);
    for (const float x : store.vector(i)) {
      line += ' ';
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
      line.append(buf.data(), ptr);
    }
    line += '\n';
    out << line;
  }
}

void save_text(const VectorStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_text(store, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

VectorStore load_text(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source, line_no, "missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_blanks(line);
  std::size_t words = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(header[0], words) || !parse_number(header[1], dim)) {
    throw ParseError(source, line_no, "header must be 'V dim'");
  }

  std::vector<VocabEntry> entries;
  entries.reserve(words);
  std::vector<float> vectors;
  vectors.reserve(words * dim);
  StringIndex seen;
  for (std::size_t i = 0; i < words; ++i) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw ParseError(source, line_no,
                       "header declares " + std::to_string(words) + " vectors but file ends after " +
                           std::to_string(i));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_blanks(line);
    if (fields.size() != dim + 1) {
      throw ParseError(source, line_no,
                       "expected word and " + std::to_string(dim) + " values, found " +
                           std::to_string(fields.empty() ? 0 : fields.size() - 1) + " values");
    }
    std::string word(fields[0]);
    if (!seen.emplace(word, i).second) throw ParseError(source, line_no, "duplicate word '" + word + "'");
    for (std::size_t d = 0; d < dim; ++d) {
      float x = 0;
      if (!parse_number(fields[d + 1], x)) {
        throw ParseError(source, line_no, "invalid number '" + std::string(fields[d + 1]) + "'");
      }
      vectors.push_back(x);
    }
    entries.push_back({std::move(word), static_cast<std::uint64_t>(words - i)});
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      throw ParseError(source, line_no,
                       "more vectors than the " + std::to_string(words) + " declared in the header");
    }
  }
  return VectorStore(Vocabulary(std::move(entries), 1), dim, std::move(vectors));
}

VectorStore load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return load_text(in, path);
}

}  // namespace wordvec
