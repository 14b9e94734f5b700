#pragma once

// Slow, direct reference computations used to cross-check the library.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordvec/eval.hpp"
#include "wordvec/store.hpp"
#include "wordvec/trainer.hpp"

namespace wordvec::testing {

// Linear scan: first index with the exact word, else first index with the
// same case fold. Restricted to indices below `limit`.
std::optional<std::size_t> scan_lookup(const VectorStore& store, const std::string& word, std::size_t limit);

// 3CosAdd by exhaustive search over every row below `limit`, using unit rows
// rounded to float the same way a stored unit matrix is. Ties prefer the
// lower index.
AnalogyAnswer brute_force_analogy(const VectorStore& store, const AnalogyQuestion& q, std::size_t limit);

// Average ranks by counting (O(n^2)), then a two-pass Pearson correlation in
// long double.
double reference_spearman(const std::vector<double>& xs, const std::vector<double>& ys);

// The negative-sampling loss of one prediction, from scratch:
// -ln s(u.v_t) - sum ln s(-u.v_n), u the mean of the given input rows, each
// row itself the mean of its word's parts.
double reference_loss(const ParameterMatrices<double>& params, const InputRows& rows,
                      std::span<const std::uint32_t> context_words, std::uint32_t target,
                      std::span<const std::uint32_t> noise);

}  // namespace wordvec::testing
