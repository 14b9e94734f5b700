#include "wordvec/corpus_tools.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "wordvec/text.hpp"

namespace wordvec {

BuiltCorpus build_corpus(const std::vector<CategorySpec>& specs) {
  if (specs.empty()) throw DomainError("no categories to build");
  std::set<std::string> names;
  BuiltCorpus out;
  for (const auto& spec : specs) {
    if (!names.insert(spec.name).second) throw DomainError("duplicate category name '" + spec.name + "'");
    std::vector<AnalogyQuestion> questions;
    try {
      questions = expand_pairs(spec.pairs);
    } catch (const DomainError& e) {
      throw DomainError("category '" + spec.name + "': " + e.what());
    }
    const std::size_t n = questions.size();
    out.stats.categories.push_back({spec.name, spec.group, spec.pairs.size(), n});
    (spec.group == Group::kSemantic ? out.stats.semantic_questions : out.stats.syntactic_questions) += n;
    out.stats.total_questions += n;
    out.corpus.categories.push_back({spec.name, spec.group, std::move(questions)});
  }
  return out;
}

std::vector<CategorySpec> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<CategorySpec> specs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, '\t');
    if (fields.size() != 3) throw ParseError(path, line_no, "expected 'name<TAB>group<TAB>path'");
    const auto group = parse_group(trim(fields[1]));
    if (!group) throw ParseError(path, line_no, "unknown group '" + std::string(fields[1]) + "'");
    std::filesystem::path pairs_path(std::string(trim(fields[2])));
    if (pairs_path.is_relative()) pairs_path = base / pairs_path;
    std::ifstream pairs_in(pairs_path);
    if (!pairs_in) throw IoError("cannot open pair list '" + pairs_path.string() + "'");
    specs.push_back({std::string(trim(fields[0])), *group, read_pair_list(pairs_in, pairs_path.string())});
  }
  return specs;
}

std::string format_build_stats(const BuildStats& stats) {
  std::string out;
  for (const auto& c : stats.categories) {
    out += fmt::format("category.{}.group={}\n", c.name, to_string(c.group));
    out += fmt::format("category.{}.pairs={}\n", c.name, c.pairs);
    out += fmt::format("category.{}.questions={}\n", c.name, c.questions);
  }
  out += fmt::format("semantic.questions={}\n", stats.semantic_questions);
  out += fmt::format("syntactic.questions={}\n", stats.syntactic_questions);
  out += fmt::format("all.questions={}\n", stats.total_questions);
  return out;
}

double CoverageReport::coverage() const {
  return total ? 100.0 * static_cast<double>(covered) / static_cast<double>(total) : 0.0;
}

CoverageReport validate_corpus(const AnalogyCorpus& corpus, const Vocabulary& vocab,
                               std::size_t search_limit) {
  CoverageReport report;
  std::map<std::string, bool> known;
  auto in_vocab = [&](const std::string& w) {
    auto it = known.find(w);
    if (it == known.end()) it = known.emplace(w, resolve_within(vocab, w, search_limit).has_value()).first;
    return it->second;
  };
  for (const auto& cat : corpus.categories) {
    CategoryCoverage cov{cat.name, cat.group, cat.questions.size(), 0, {}};
    std::map<std::string, std::size_t> missing;
    for (const auto& q : cat.questions) {
      std::set<std::string> absent;
      for (const auto* w : {&q.a, &q.b, &q.c, &q.d}) {
        if (!in_vocab(*w)) absent.insert(*w);
      }
      if (absent.empty()) ++cov.covered;
      for (const auto& w : absent) ++missing[w];
    }
    for (const auto& [w, n] : missing) cov.oov_words.push_back({w, n});
    std::stable_sort(cov.oov_words.begin(), cov.oov_words.end(),
                     [](const OovWord& a, const OovWord& b) { return a.questions > b.questions; });
    report.total += cov.total;
    report.covered += cov.covered;
    report.categories.push_back(std::move(cov));
  }
  return report;
}

std::string format_coverage(const CoverageReport& report) {
  std::string out;
  for (const auto& c : report.categories) {
    const auto prefix = "category." + c.name;
    out += fmt::format("{}.total={}\n", prefix, c.total);
    out += fmt::format("{}.covered={}\n", prefix, c.covered);
    std::string words;
    for (const auto& w : c.oov_words) {
      if (!words.empty()) words += ' ';
      words += fmt::format("{}:{}", w.word, w.questions);
    }
    out += fmt::format("{}.oov_words={}\n", prefix, words);
  }
  out += fmt::format("all.total={}\n", report.total);
  out += fmt::format("all.covered={}\n", report.covered);
  out += fmt::format("all.coverage={:.2f}\n", report.coverage());
  return out;
}

}  // namespace wordvec
