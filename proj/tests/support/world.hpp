#pragma once

// A deterministic synthetic English-like text with planted relations:
// countries and capitals, male and female roles, adjectives and their
// comparatives. Each related pair shares a private set of context words and
// each side of a relation has its own marker words, so the offsets between
// pair members are consistent across pairs.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "wordvec/eval.hpp"

namespace wordvec::testing {

struct WorldRelation {
  std::string name;
  Group group = Group::kSemantic;
  std::vector<WordPair> pairs;
};

const std::vector<WorldRelation>& world_relations();

// Writes raw text lines (with punctuation and capitals) until at least
// `target_bytes` have been written. Same seed, same bytes.
std::size_t write_world_text(std::ostream& out, std::size_t target_bytes, std::uint64_t seed);

// Twenty analogy questions over the planted relations.
AnalogyCorpus world_analogy_fixture();

// Thirty pairs scored the way a person would: pair members high, same
// relation moderate, unrelated words low.
std::vector<SimilarityPair> world_similarity_fixture();

}  // namespace wordvec::testing
