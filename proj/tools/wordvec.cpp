// wordvec: train word embeddings and evaluate them on analogy and
// word-similarity corpora.
//
//   wordvec preprocess raw.txt corpus.txt
//   wordvec train corpus.txt vectors.txt --model fasttext-skip --dim 300
//   wordvec eval-analogy vectors.txt analogies.txt --groups analogies.groups
//   wordvec eval-similarity vectors.txt ws353.txt --scale-max 10
//   wordvec nn vectors.txt zagreb -k 10
//   wordvec build-corpus manifest.tsv analogies.txt
//   wordvec validate-corpus analogies.txt --vectors vectors.txt
//
// Exit status: 0 on success, 1 on domain failures, 2 on input or
// configuration errors.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "wordvec/config.hpp"
#include "wordvec/corpus.hpp"
#include "wordvec/corpus_tools.hpp"
#include "wordvec/error.hpp"
#include "wordvec/eval.hpp"
#include "wordvec/store.hpp"
#include "wordvec/text.hpp"
#include "wordvec/trainer.hpp"

namespace {

using namespace wordvec;

// Domain failure detected by a command (exit 1).
class CommandFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------- preprocess

struct PreprocessArgs {
  std::string input;
  std::string output;
  std::size_t min_len = kMinSentenceTokens;
  bool skip_invalid = false;
};

int cmd_preprocess(const PreprocessArgs& args) {
  auto in = open_input(args.input);
  auto out = open_output(args.output);
  std::uint64_t lines = 0, kept = 0, tokens = 0, invalid = 0;
  std::string line;
  std::string joined;
  while (std::getline(in, line)) {
    ++lines;
    std::vector<std::string> words;
    try {
      words = tokenize_line(line);
    } catch (const DecodeError& e) {
      if (!args.skip_invalid) throw ParseError(args.input, lines, e.what());
      ++invalid;
      continue;
    }
    if (!admits_sentence(words, args.min_len)) continue;
    joined.clear();
    for (const auto& w : words) {
      if (!joined.empty()) joined += ' ';
      joined += w;
    }
    joined += '\n';
    out << joined;
    ++kept;
    tokens += words.size();
  }
  finish_output(out, args.output);
  fmt::print("lines={}\nsentences={}\ntokens={}\ninvalid_lines={}\n", lines, kept, tokens, invalid);
  return 0;
}

// --------------------------------------------------------------------- train

struct TrainArgs {
  std::string corpus;
  std::string output;
  std::string config_file;
  std::string model;
  std::optional<std::string> mode;
  std::optional<std::string> subword;
  std::optional<std::size_t> dim, window, negatives, epochs, minn, maxn, buckets, noise_table_size;
  std::optional<double> lr, sample;
  std::optional<std::uint64_t> min_count, seed;
  std::optional<unsigned> workers;
  std::string vocab_out;
  bool quiet = false;
};

ModelConfig resolve_config(const TrainArgs& args) {
  ModelConfig config;
  config.workers = default_workers();
  if (!args.config_file.empty()) {
    auto in = open_input(args.config_file);
    config.merge_from(in, args.config_file);
  }
  if (!args.model.empty()) config.apply_model_name(args.model);
  if (args.mode) config.set("mode", *args.mode);
  if (args.subword) config.set("subword", *args.subword);
  if (args.dim) config.dim = *args.dim;
  if (args.window) config.window = *args.window;
  if (args.negatives) config.negatives = *args.negatives;
  if (args.epochs) config.epochs = *args.epochs;
  if (args.minn) config.minn = *args.minn;
  if (args.maxn) config.maxn = *args.maxn;
  if (args.buckets) config.buckets = *args.buckets;
  if (args.noise_table_size) config.noise_table_size = *args.noise_table_size;
  if (args.lr) config.initial_lr = *args.lr;
  if (args.sample) config.subsample_t = *args.sample;
  if (args.min_count) config.min_count = *args.min_count;
  if (args.seed) config.seed = *args.seed;
  if (args.workers) config.workers = *args.workers;
  config.validate();
  return config;
}

int cmd_train(const TrainArgs& args) {
  const ModelConfig config = resolve_config(args);
  auto in = open_input(args.corpus);
  auto out = open_output(args.output);
  std::optional<std::ofstream> vocab_out;
  if (!args.vocab_out.empty()) vocab_out = open_output(args.vocab_out);

  const auto sentences = read_sentences(in, args.corpus);
  const auto vocab = build_vocabulary(sentences, config.min_count, config.workers);
  if (vocab.empty()) throw CommandFailure("no word reaches min_count=" + std::to_string(config.min_count));
  if (vocab_out) {
    vocab.write_dump(*vocab_out);
    finish_output(*vocab_out, args.vocab_out);
  }
  const auto corpus = index_corpus(sentences, vocab);
  if (!args.quiet) {
    fmt::print(stderr, "model {}: {} sentences, vocabulary {}, {} tokens\n", config.model_name(),
               sentences.size(), vocab.size(), vocab.total_tokens());
  }

  ProgressCallback progress;
  if (!args.quiet) {
    progress = [](const TrainingProgress& p) {
      if (p.epoch_end) {
        fmt::print(stderr, "\repoch {}/{} done  lr {:.6f}  tokens/sec {:.0f}  epoch-mean loss {:.4f}\n",
                   p.epoch, p.epochs, p.lr, p.tokens_per_second, p.loss);
      } else {
        fmt::print(stderr, "\repoch {}/{}  progress {:5.1f}%  lr {:.6f}  tokens/sec {:.0f}  loss {:.4f}",
                   p.epoch, p.epochs, 100.0 * p.progress, p.lr, p.tokens_per_second, p.loss);
      }
      std::fflush(stderr);
    };
  }
  const auto result = train(corpus, vocab, config, progress);
  save_text(result.store, out);
  finish_output(out, args.output);
  fmt::print("model={}\nvocabulary={}\ndim={}\ntokens={}\n", config.model_name(), vocab.size(), config.dim,
             vocab.total_tokens());
  for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
    fmt::print("epoch.{}.loss={:.6f}\n", e + 1, result.epoch_losses[e]);
  }
  return 0;
}

// -------------------------------------------------------------- eval-analogy

AnalogyCorpus load_corpus(const std::string& path, const std::string& groups_path) {
  auto in = open_input(path);
  std::vector<std::string> warnings;
  AnalogyCorpus corpus;
  if (groups_path.empty()) {
    corpus = read_analogy_corpus(in, path, nullptr, "", &warnings);
  } else {
    auto groups = open_input(groups_path);
    corpus = read_analogy_corpus(in, path, &groups, groups_path, &warnings);
  }
  for (const auto& w : warnings) fmt::print(stderr, "warning: {}\n", w);
  return corpus;
}

struct EvalAnalogyArgs {
  std::string vectors;
  std::string corpus;
  std::string groups;
  std::size_t top = kDefaultSearchLimit;
  unsigned workers = 0;
  std::string kv_out;
};

int cmd_eval_analogy(const EvalAnalogyArgs& args) {
  if (args.top == 0) throw ConfigError("--top must be positive");
  std::optional<std::ofstream> kv_out;
  if (!args.kv_out.empty()) kv_out = open_output(args.kv_out);
  const auto corpus = load_corpus(args.corpus, args.groups);
  const auto store = load_text(args.vectors);
  const auto report =
      evaluate_analogies(store, corpus, args.top, args.workers ? args.workers : default_workers());
  const auto kv = format_report_kv(report);
  fmt::print("{}\n{}", format_report_table(report), kv);
  if (kv_out) {
    *kv_out << kv;
    finish_output(*kv_out, args.kv_out);
  }
  return 0;
}

// ----------------------------------------------------------- eval-similarity

struct EvalSimilarityArgs {
  std::string vectors;
  std::string pairs;
  double scale_min = 0;
  double scale_max = 10;
  std::size_t top = kDefaultSearchLimit;
  bool detail = false;
};

int cmd_eval_similarity(const EvalSimilarityArgs& args) {
  if (args.top == 0) throw ConfigError("--top must be positive");
  if (!(args.scale_min < args.scale_max)) throw ConfigError("--scale-min must be below --scale-max");
  auto in = open_input(args.pairs);
  const auto pairs = read_similarity_pairs(in, args.pairs, args.scale_min, args.scale_max);
  const auto store = load_text(args.vectors);
  const auto result = evaluate_similarity(store, pairs, args.top);
  if (args.detail) {
    for (const auto& p : result.pairs) {
      fmt::print("pair\t{}\t{}\t{}\t{:.6f}{}{}\n", p.w1, p.w2, p.human_score, p.model_score,
                 p.w1_oov ? "\tw1-oov" : "", p.w2_oov ? "\tw2-oov" : "");
    }
  }
  fmt::print("pairs={}\noov_words={}\nscore={:.2f}\n", result.pairs.size(), result.oov_words, result.score);
  return 0;
}

// ------------------------------------------------------------------------ nn

struct NnArgs {
  std::string vectors;
  std::string word;
  std::size_t k = 10;
  std::size_t top = 0;  // 0: whole vocabulary
};

int cmd_nn(const NnArgs& args) {
  const auto store = load_text(args.vectors);
  const std::size_t limit = args.top ? args.top : store.size();
  const auto index = resolve_within(store.vocab(), args.word, limit);
  if (!index) {
    std::vector<std::pair<std::size_t, std::size_t>> close;  // (distance, index)
    for (std::size_t i = 0; i < std::min(limit, store.size()); ++i) {
      const auto d = edit_distance(args.word, store.word(i));
      if (d <= 2) close.emplace_back(d, i);
    }
    std::stable_sort(close.begin(), close.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string message = "word '" + args.word + "' is not in the vocabulary";
    if (!close.empty()) {
      message += "; closest:";
      for (std::size_t i = 0; i < std::min<std::size_t>(close.size(), 10); ++i) {
        message += ' ' + store.word(close[i].second);
      }
    }
    throw CommandFailure(message);
  }
  const auto row = store.vector(*index);
  const std::vector<double> query(row.begin(), row.end());
  const std::size_t exclude[] = {*index};
  for (const auto& n : store.nearest(query, args.k, limit, exclude)) {
    fmt::print("{}\t{:.6f}\n", store.word(n.index), n.cosine);
  }
  return 0;
}

// -------------------------------------------------------------- build-corpus

struct BuildCorpusArgs {
  std::string manifest;
  std::string output;
  std::string groups_out;
  std::optional<std::size_t> expect;
};

int cmd_build_corpus(const BuildCorpusArgs& args) {
  const std::string groups_path = args.groups_out.empty() ? args.output + ".groups" : args.groups_out;
  auto out = open_output(args.output);
  auto groups = open_output(groups_path);
  const auto built = build_corpus(read_manifest(args.manifest));
  write_analogy_corpus(built.corpus, out);
  write_groups(built.corpus, groups);
  finish_output(out, args.output);
  finish_output(groups, groups_path);
  fmt::print("{}", format_build_stats(built.stats));
  if (args.expect && *args.expect != built.stats.total_questions) {
    const auto built_n = static_cast<long long>(built.stats.total_questions);
    const auto expected_n = static_cast<long long>(*args.expect);
    fmt::print(stderr, "note: built {} questions, expected {} (difference {:+})\n", built_n, expected_n,
               built_n - expected_n);
  }
  return 0;
}

// ----------------------------------------------------------- validate-corpus

struct ValidateCorpusArgs {
  std::string corpus;
  std::string groups;
  std::string vectors;
  std::string vocab;
  std::size_t top = kDefaultSearchLimit;
};

int cmd_validate_corpus(const ValidateCorpusArgs& args) {
  if (args.vectors.empty() == args.vocab.empty()) {
    throw ConfigError("exactly one of --vectors or --vocab is required");
  }
  const auto corpus = load_corpus(args.corpus, args.groups);
  Vocabulary vocab;
  if (!args.vectors.empty()) {
    vocab = load_text(args.vectors).vocab();
  } else {
    auto in = open_input(args.vocab);
    vocab = Vocabulary::read_dump(in, args.vocab);
  }
  fmt::print("{}", format_coverage(validate_corpus(corpus, vocab, args.top)));
  return 0;
}

template <typename F>
int guarded(F&& command) {
  try {
    return command();
  } catch (const ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
  } catch (const ConfigError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
  } catch (const IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
  } catch (const DecodeError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train word embeddings and evaluate them on analogy and similarity corpora"};
  app.require_subcommand(1);
  std::function<int()> run;

  PreprocessArgs pre;
  auto* preprocess = app.add_subcommand("preprocess", "Tokenize raw text and keep sentences of at least N tokens");
  preprocess->add_option("input", pre.input, "Raw UTF-8 text, one sentence per line")->required();
  preprocess->add_option("output", pre.output, "Filtered corpus")->required();
  preprocess->add_option("--min-len", pre.min_len, "Minimum tokens per sentence")->capture_default_str();
  preprocess->add_flag("--skip-invalid", pre.skip_invalid, "Skip lines that are not valid UTF-8");
  preprocess->callback([&] { run = [&] { return cmd_preprocess(pre); }; });

  TrainArgs tr;
  auto* trainc = app.add_subcommand("train", "Train CBOW / Skip-gram / fastText-style vectors");
  trainc->add_option("corpus", tr.corpus, "Preprocessed corpus, one sentence per line")->required();
  trainc->add_option("output", tr.output, "Output vectors (word2vec text format)")->required();
  trainc->add_option("--config", tr.config_file, "key=value config file; flags override it");
  trainc->add_option("--model", tr.model, "cbow, skipgram, fasttext-skip or fasttext-cbow");
  trainc->add_option("--mode", tr.mode, "cbow or skipgram");
  trainc->add_option("--subword", tr.subword, "on or off");
  trainc->add_option("--dim", tr.dim);
  trainc->add_option("--window", tr.window);
  trainc->add_option("--negatives", tr.negatives);
  trainc->add_option("--lr", tr.lr, "Initial learning rate");
  trainc->add_option("--epochs", tr.epochs);
  trainc->add_option("--min-count", tr.min_count);
  trainc->add_option("--sample", tr.sample, "Subsampling threshold");
  trainc->add_option("--minn", tr.minn);
  trainc->add_option("--maxn", tr.maxn);
  trainc->add_option("--buckets", tr.buckets);
  trainc->add_option("--noise-table-size", tr.noise_table_size);
  trainc->add_option("--seed", tr.seed);
  trainc->add_option("--workers", tr.workers, "Training threads (default: all cores)");
  trainc->add_option("--vocab-out", tr.vocab_out, "Write the vocabulary as word<TAB>count");
  trainc->add_flag("--quiet", tr.quiet, "No progress output");
  trainc->callback([&] { run = [&] { return cmd_train(tr); }; });

  EvalAnalogyArgs ea;
  auto* analogy = app.add_subcommand("eval-analogy", "Per-category analogy accuracy");
  analogy->add_option("vectors", ea.vectors)->required();
  analogy->add_option("corpus", ea.corpus)->required();
  analogy->add_option("--groups", ea.groups, "name<TAB>semantic|syntactic mapping");
  analogy->add_option("--top", ea.top, "Only the most frequent N words are searched")->capture_default_str();
  analogy->add_option("--workers", ea.workers, "Evaluation threads (default: all cores)");
  analogy->add_option("--kv-out", ea.kv_out, "Also write the key=value report here");
  analogy->callback([&] { run = [&] { return cmd_eval_analogy(ea); }; });

  EvalSimilarityArgs es;
  auto* similarity = app.add_subcommand("eval-similarity", "Spearman correlation with human similarity scores");
  similarity->add_option("vectors", es.vectors)->required();
  similarity->add_option("pairs", es.pairs, "w1<TAB>w2<TAB>score lines")->required();
  similarity->add_option("--scale-min", es.scale_min)->capture_default_str();
  similarity->add_option("--scale-max", es.scale_max)->capture_default_str();
  similarity->add_option("--top", es.top, "Only the most frequent N words are known")->capture_default_str();
  similarity->add_flag("--detail", es.detail, "Print per-pair scores");
  similarity->callback([&] { run = [&] { return cmd_eval_similarity(es); }; });

  NnArgs nn;
  auto* nnc = app.add_subcommand("nn", "Nearest neighbours of a word");
  nnc->add_option("vectors", nn.vectors)->required();
  nnc->add_option("word", nn.word)->required();
  nnc->add_option("-k", nn.k)->capture_default_str();
  nnc->add_option("--top", nn.top, "Only search the most frequent N words");
  nnc->callback([&] { run = [&] { return cmd_nn(nn); }; });

  BuildCorpusArgs bc;
  auto* build = app.add_subcommand("build-corpus", "Expand category pair lists into an analogy corpus");
  build->add_option("manifest", bc.manifest, "name<TAB>group<TAB>pairs-path lines")->required();
  build->add_option("output", bc.output)->required();
  build->add_option("--groups-out", bc.groups_out, "Group mapping output (default: <output>.groups)");
  build->add_option("--expect", bc.expect, "Report a mismatch against this question count");
  build->callback([&] { run = [&] { return cmd_build_corpus(bc); }; });

  ValidateCorpusArgs vc;
  auto* validate = app.add_subcommand("validate-corpus", "Vocabulary coverage of an analogy corpus");
  validate->add_option("corpus", vc.corpus)->required();
  validate->add_option("--groups", vc.groups);
  validate->add_option("--vectors", vc.vectors);
  validate->add_option("--vocab", vc.vocab, "word<TAB>count dump");
  validate->add_option("--top", vc.top)->capture_default_str();
  validate->callback([&] { run = [&] { return cmd_validate_corpus(vc); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return guarded(run);
}
