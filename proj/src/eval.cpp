#include "wordvec/eval.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>
#include <unordered_map>

#include "wordvec/text.hpp"

namespace wordvec {

std::string_view to_string(Group group) {
  return group == Group::kSemantic ? "semantic" : "syntactic";
}

std::optional<Group> parse_group(std::string_view text) {
  if (text == "semantic") return Group::kSemantic;
  if (text == "syntactic") return Group::kSyntactic;
  return std::nullopt;
}

std::size_t AnalogyCorpus::question_count() const {
  std::size_t n = 0;
  for (const auto& c : categories) n += c.questions.size();
  return n;
}

std::vector<AnalogyQuestion> expand_pairs(const std::vector<WordPair>& pairs) {
  if (pairs.size() < 2) throw DomainError("at least two pairs are needed to form questions");
  std::set<WordPair> distinct(pairs.begin(), pairs.end());
  if (distinct.size() != pairs.size()) throw DomainError("pair list contains a repeated pair");
  std::vector<AnalogyQuestion> out;
  out.reserve(pairs.size() * (pairs.size() - 1));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      out.push_back({pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second});
    }
  }
  return out;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto body = trim(line);
    if (body.empty()) continue;
    return true;
  }
  return false;
}

}  // namespace

AnalogyCorpus read_analogy_corpus(std::istream& corpus, const std::string& source,
                                  std::istream* groups, const std::string& groups_source,
                                  std::vector<std::string>* warnings) {
  auto warn = [&](std::string message) {
    if (warnings) warnings->push_back(std::move(message));
  };

  AnalogyCorpus out;
  std::unordered_map<std::string, std::size_t> by_name;
  std::string line;
  std::size_t line_no = 0;
  while (next_content_line(corpus, line, line_no)) {
    const auto body = trim(line);
    if (body.front() == ':') {
      std::string name(trim(body.substr(1)));
      if (name.empty()) throw ParseError(source, line_no, "empty category name");
      if (by_name.count(name)) throw ParseError(source, line_no, "duplicate category '" + name + "'");
      by_name.emplace(name, out.categories.size());
      out.categories.push_back({std::move(name), Group::kSyntactic, {}});
      continue;
    }
    if (out.categories.empty()) throw ParseError(source, line_no, "question before any ': category' line");
    const auto words = split_blanks(body);
    if (words.size() != 4) {
      throw ParseError(source, line_no, "expected four words, found " + std::to_string(words.size()));
    }
    try {
      for (const auto w : words) validate_utf8(w);
    } catch (const DecodeError& e) {
      throw ParseError(source, line_no, e.what());
    }
    AnalogyQuestion q{std::string(words[0]), std::string(words[1]), std::string(words[2]),
                      std::string(words[3])};
    if (q.a == q.b || q.c == q.d) throw ParseError(source, line_no, "question repeats a word within a pair");
    out.categories.back().questions.push_back(std::move(q));
  }

  if (!groups) {
    if (!out.categories.empty()) warn("no group mapping given; every category is treated as syntactic");
    return out;
  }
  std::vector<bool> assigned(out.categories.size(), false);
  line_no = 0;
  while (next_content_line(*groups, line, line_no)) {
    const auto body = trim(line);
    if (body.front() == '#') continue;
    auto fields = split(body, '\t');
    if (fields.size() != 2) fields = split_blanks(body);
    if (fields.size() != 2) throw ParseError(groups_source, line_no, "expected 'name<TAB>semantic|syntactic'");
    const auto group = parse_group(trim(fields[1]));
    if (!group) {
      throw ParseError(groups_source, line_no, "unknown group '" + std::string(fields[1]) + "'");
    }
    const std::string name(trim(fields[0]));
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      warn("group mapping names unknown category '" + name + "'");
      continue;
    }
    out.categories[it->second].group = *group;
    assigned[it->second] = true;
  }
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (!assigned[i]) {
      warn("category '" + out.categories[i].name + "' has no group mapping; treated as syntactic");
    }
  }
  return out;
}

void write_analogy_corpus(const AnalogyCorpus& corpus, std::ostream& out) {
  for (const auto& c : corpus.categories) {
    out << ": " << c.name << '\n';
    for (const auto& q : c.questions) out << q.a << ' ' << q.b << ' ' << q.c << ' ' << q.d << '\n';
  }
}

void write_groups(const AnalogyCorpus& corpus, std::ostream& out) {
  for (const auto& c : corpus.categories) out << c.name << '\t' << to_string(c.group) << '\n';
}

std::vector<WordPair> read_pair_list(std::istream& in, const std::string& source) {
  std::vector<WordPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (next_content_line(in, line, line_no)) {
    const auto body = trim(line);
    if (body.front() == '#') continue;
    auto fields = split(body, '\t');
    if (fields.size() != 2) fields = split_blanks(body);
    if (fields.size() != 2) throw ParseError(source, line_no, "expected 'x<TAB>y'");
    const auto x = trim(fields[0]);
    const auto y = trim(fields[1]);
    if (x.empty() || y.empty() || split_blanks(x).size() != 1 || split_blanks(y).size() != 1) {
      throw ParseError(source, line_no, "pair entries must be single nonempty words");
    }
    if (x == y) throw ParseError(source, line_no, "pair repeats the same word");
    pairs.emplace_back(std::string(x), std::string(y));
  }
  return pairs;
}

bool same_word(std::string_view a, std::string_view b) {
  return a == b || fold_case(a) == fold_case(b);
}

std::optional<std::size_t> resolve_within(const Vocabulary& vocab, std::string_view word,
                                          std::size_t limit) {
  if (auto exact = vocab.find(word); exact && *exact < limit) return exact;
  if (auto folded = vocab.find_folded(word); folded && *folded < limit) return folded;
  return std::nullopt;
}

AnalogyAnswer solve_analogy(const VectorStore& store, const AnalogyQuestion& q,
                            std::size_t search_limit) {
  const auto& vocab = store.vocab();
  const auto a = resolve_within(vocab, q.a, search_limit);
  const auto b = resolve_within(vocab, q.b, search_limit);
  const auto c = resolve_within(vocab, q.c, search_limit);
  if (!a || !b || !c) return {AnalogyAnswer::Status::kOov, 0};

  const auto ua = store.unit(*a);
  const auto ub = store.unit(*b);
  const auto uc = store.unit(*c);
  std::vector<double> target(store.dim());
  for (std::size_t i = 0; i < target.size(); ++i) {
    target[i] = static_cast<double>(ub[i]) - static_cast<double>(ua[i]) + static_cast<double>(uc[i]);
  }
  const std::size_t exclude[] = {*a, *b, *c};
  const auto best = store.nearest(target, 1, search_limit, exclude);
  if (best.empty()) return {AnalogyAnswer::Status::kNoCandidate, 0};
  return {AnalogyAnswer::Status::kPredicted, best.front().index};
}

double CategoryResult::accuracy() const {
  return answered ? 100.0 * static_cast<double>(correct) / static_cast<double>(answered) : 0.0;
}

double GroupResult::accuracy() const {
  return answered ? 100.0 * static_cast<double>(correct) / static_cast<double>(answered) : 0.0;
}

double GroupResult::accuracy_with_oov() const {
  return total ? 100.0 * static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

EvalReport evaluate_analogies(const VectorStore& store, const AnalogyCorpus& corpus,
                              std::size_t search_limit, unsigned workers) {
  if (corpus.categories.empty() || corpus.question_count() == 0) {
    throw DomainError("analogy corpus has no questions");
  }
  struct Item {
    std::size_t category;
    const AnalogyQuestion* question;
  };
  std::vector<Item> items;
  items.reserve(corpus.question_count());
  for (std::size_t c = 0; c < corpus.categories.size(); ++c) {
    for (const auto& q : corpus.categories[c].questions) items.push_back({c, &q});
  }

  struct Counts {
    std::size_t correct = 0;
    std::size_t answered = 0;
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(items.size())));
  std::vector<std::vector<Counts>> tallies(workers, std::vector<Counts>(corpus.categories.size()));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < items.size(); i += workers) {
      const auto& q = *items[i].question;
      if (!resolve_within(store.vocab(), q.d, search_limit)) continue;
      const auto answer = solve_analogy(store, q, search_limit);
      if (answer.oov()) continue;
      auto& t = tallies[w][items[i].category];
      ++t.answered;
      if (answer.status == AnalogyAnswer::Status::kPredicted && same_word(store.word(answer.index), q.d)) {
        ++t.correct;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    (void)store.unit(0);  // build the unit rows once, before fanning out
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }

  EvalReport report;
  for (std::size_t c = 0; c < corpus.categories.size(); ++c) {
    const auto& cat = corpus.categories[c];
    CategoryResult r{cat.name, cat.group, 0, 0, cat.questions.size()};
    for (const auto& t : tallies) {
      r.correct += t[c].correct;
      r.answered += t[c].answered;
    }
    auto& group = cat.group == Group::kSemantic ? report.semantic : report.syntactic;
    for (GroupResult* g : {&group, &report.all}) {
      g->correct += r.correct;
      g->answered += r.answered;
      g->total += r.total;
    }
    report.categories.push_back(std::move(r));
  }
  return report;
}

std::string format_report_table(const EvalReport& report) {
  std::size_t width = 10;
  for (const auto& c : report.categories) width = std::max(width, c.name.size());
  std::string out = fmt::format("{:<{}}  {:>8}  {:>9}  {:>9}\n", "Category", width, "Accuracy",
                                "Answered", "Total");
  const std::string rule(width + 34, '-');
  out += rule + '\n';
  for (const auto& c : report.categories) {
    out += fmt::format("{:<{}}  {:>8.2f}  {:>9}  {:>9}\n", c.name, width, c.accuracy(), c.answered, c.total);
  }
  out += rule + '\n';
  out += fmt::format("{:<{}}  {:>8.2f}  {:>9}  {:>9}\n", "SEMANTICS", width, report.semantic.accuracy(),
                     report.semantic.answered, report.semantic.total);
  out += fmt::format("{:<{}}  {:>8.2f}  {:>9}  {:>9}\n", "SYNTACTIC", width, report.syntactic.accuracy(),
                     report.syntactic.answered, report.syntactic.total);
  out += rule + '\n';
  out += fmt::format("{:<{}}  {:>8.2f}  {:>9}  {:>9}  ({:.2f} incl. OOV)\n", "ALL", width,
                     report.all.accuracy(), report.all.answered, report.all.total,
                     report.all.accuracy_with_oov());
  return out;
}

std::string format_report_kv(const EvalReport& report) {
  std::string out;
  for (const auto& c : report.categories) {
    const auto prefix = "category." + c.name;
    out += fmt::format("{}.group={}\n", prefix, to_string(c.group));
    out += fmt::format("{}.correct={}\n", prefix, c.correct);
    out += fmt::format("{}.answered={}\n", prefix, c.answered);
    out += fmt::format("{}.total={}\n", prefix, c.total);
    out += fmt::format("{}.accuracy={:.2f}\n", prefix, c.accuracy());
  }
  auto group = [&](std::string_view name, const GroupResult& g) {
    out += fmt::format("{}.correct={}\n", name, g.correct);
    out += fmt::format("{}.answered={}\n", name, g.answered);
    out += fmt::format("{}.total={}\n", name, g.total);
    out += fmt::format("{}.accuracy={:.2f}\n", name, g.accuracy());
    out += fmt::format("{}.accuracy_with_oov={:.2f}\n", name, g.accuracy_with_oov());
  };
  group("semantic", report.semantic);
  group("syntactic", report.syntactic);
  group("all", report.all);
  return out;
}

std::vector<double> oov_fallback_vector(const VectorStore& store, std::size_t limit) {
  const std::size_t n = std::min(limit, store.size());
  if (n == 0) throw DomainError("cannot build a fallback vector from an empty store");
  constexpr std::size_t kLeastCommon = 10;
  const std::size_t begin = n > kLeastCommon ? n - kLeastCommon : 0;
  std::vector<double> mean(store.dim(), 0.0);
  for (std::size_t i = begin; i < n; ++i) {
    const auto row = store.vector(i);
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += static_cast<double>(row[d]);
  }
  const auto count = static_cast<double>(n - begin);
  for (auto& x : mean) x /= count;
  return mean;
}

std::vector<double> oov_fallback_vector(const VectorStore& store) {
  return oov_fallback_vector(store, store.size());
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw DomainError("spearman: length mismatch");
  if (xs.size() < 2) throw DomainError("spearman: need at least two values");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) throw DomainError("spearman: NaN input");
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  // Average ranks always sum to n(n+1)/2.
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DomainError("spearman: correlation undefined for constant ranks");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<SimilarityPair> read_similarity_pairs(std::istream& in, const std::string& source,
                                                  double scale_min, double scale_max) {
  std::vector<SimilarityPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (next_content_line(in, line, line_no)) {
    const auto body = trim(line);
    if (body.front() == '#') continue;
    auto fields = split(body, '\t');
    if (fields.size() != 3) fields = split_blanks(body);
    if (fields.size() != 3) throw ParseError(source, line_no, "expected 'w1<TAB>w2<TAB>score'");
    const auto text = trim(fields[2]);
    double score = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), score);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(score)) {
      throw ParseError(source, line_no, "invalid score '" + std::string(text) + "'");
    }
    if (score < scale_min || score > scale_max) {
      throw ParseError(source, line_no,
                       fmt::format("score {} outside the declared scale [{}, {}]", score, scale_min, scale_max));
    }
    pairs.push_back({std::string(trim(fields[0])), std::string(trim(fields[1])), score});
  }
  return pairs;
}

SimilarityResult evaluate_similarity(const VectorStore& store, const std::vector<SimilarityPair>& pairs,
                                     std::size_t search_limit) {
  if (pairs.empty()) throw DomainError("similarity corpus is empty");
  const auto fallback = oov_fallback_vector(store, search_limit);
  SimilarityResult result;
  std::vector<double> human, model;
  auto lookup = [&](const std::string& word, bool& oov) {
    if (auto i = resolve_within(store.vocab(), word, search_limit)) {
      const auto row = store.vector(*i);
      oov = false;
      return std::vector<double>(row.begin(), row.end());
    }
    oov = true;
    ++result.oov_words;
    return fallback;
  };
  for (const auto& p : pairs) {
    PairDetail d{p.w1, p.w2, p.human_score, 0.0, false, false};
    const auto v1 = lookup(p.w1, d.w1_oov);
    const auto v2 = lookup(p.w2, d.w2_oov);
    d.model_score = cosine(v1, v2);
    human.push_back(d.human_score);
    model.push_back(d.model_score);
    result.pairs.push_back(std::move(d));
  }
  result.score = spearman(human, model) * 100.0;
  return result;
}

SimilarityResult evaluate_similarity(const VectorStore& store, const std::vector<SimilarityPair>& pairs) {
  return evaluate_similarity(store, pairs, store.size());
}

}  // namespace wordvec
