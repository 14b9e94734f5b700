#include "wordvec/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "wordvec/error.hpp"
#include "wordvec/text.hpp"

namespace wordvec {

std::string_view to_string(Mode mode) { return mode == Mode::kCbow ? "cbow" : "skipgram"; }

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const auto v = lower_ascii(value);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

std::string format_real(double v) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

double ModelConfig::learning_rate() const {
  if (initial_lr) return *initial_lr;
  return mode == Mode::kCbow ? 0.05 : 0.025;
}

void ModelConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be at least 1");
  if (window < 1) throw ConfigError("window must be at least 1");
  if (negatives < 1) throw ConfigError("negatives must be at least 1");
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (min_count < 1) throw ConfigError("min_count must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (!(learning_rate() > 0)) throw ConfigError("initial_lr must be positive");
  if (!(subsample_t > 0)) throw ConfigError("subsample_t must be positive");
  if (noise_table_size < 1) throw ConfigError("noise_table_size must be positive");
  if (subword) {
    if (minn < 1 || minn > maxn) throw ConfigError("subword n-gram bounds need 1 <= minn <= maxn");
    if (buckets < 1) throw ConfigError("buckets must be at least 1");
  }
}

void ModelConfig::set(std::string_view key, std::string_view value) {
  if (key == "mode") {
    const auto v = lower_ascii(value);
    if (v == "cbow") {
      mode = Mode::kCbow;
    } else if (v == "skipgram" || v == "skip-gram") {
      mode = Mode::kSkipgram;
    } else {
      throw ConfigError("invalid value '" + std::string(value) + "' for key 'mode'");
    }
  } else if (key == "subword") {
    subword = parse_bool(key, value);
  } else if (key == "dim") {
    dim = parse_unsigned<std::size_t>(key, value);
  } else if (key == "window") {
    window = parse_unsigned<std::size_t>(key, value);
  } else if (key == "negatives") {
    negatives = parse_unsigned<std::size_t>(key, value);
  } else if (key == "initial_lr") {
    initial_lr = parse_real(key, value);
  } else if (key == "epochs") {
    epochs = parse_unsigned<std::size_t>(key, value);
  } else if (key == "min_count") {
    min_count = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "subsample_t") {
    subsample_t = parse_real(key, value);
  } else if (key == "minn") {
    minn = parse_unsigned<std::size_t>(key, value);
  } else if (key == "maxn") {
    maxn = parse_unsigned<std::size_t>(key, value);
  } else if (key == "buckets") {
    buckets = parse_unsigned<std::size_t>(key, value);
  } else if (key == "seed") {
    seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "workers") {
    workers = parse_unsigned<unsigned>(key, value);
  } else if (key == "noise_table_size") {
    noise_table_size = parse_unsigned<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void ModelConfig::apply_model_name(std::string_view name) {
  auto n = lower_ascii(name);
  std::erase(n, '-');
  std::erase(n, '_');
  if (n == "cbow") {
    mode = Mode::kCbow;
    subword = false;
  } else if (n == "skipgram") {
    mode = Mode::kSkipgram;
    subword = false;
  } else if (n == "fasttextskip" || n == "fasttextskipgram") {
    mode = Mode::kSkipgram;
    subword = true;
  } else if (n == "fasttextcbow") {
    mode = Mode::kCbow;
    subword = true;
  } else {
    throw ConfigError("unknown model name '" + std::string(name) + "'");
  }
}

std::string ModelConfig::model_name() const {
  if (subword) return mode == Mode::kCbow ? "fastText-CBOW" : "fastText-Skip";
  return mode == Mode::kCbow ? "CBOW" : "Skip-gram";
}

void ModelConfig::write(std::ostream& out) const {
  out << "mode=" << to_string(mode) << '\n'
      << "subword=" << (subword ? "on" : "off") << '\n'
      << "dim=" << dim << '\n'
      << "window=" << window << '\n'
      << "negatives=" << negatives << '\n'
      << "initial_lr=" << format_real(learning_rate()) << '\n'
      << "epochs=" << epochs << '\n'
      << "min_count=" << min_count << '\n'
      << "subsample_t=" << format_real(subsample_t) << '\n'
      << "minn=" << minn << '\n'
      << "maxn=" << maxn << '\n'
      << "buckets=" << buckets << '\n'
      << "seed=" << seed << '\n'
      << "workers=" << workers << '\n'
      << "noise_table_size=" << noise_table_size << '\n';
}

void ModelConfig::merge_from(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key=value");
    try {
      set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

ModelConfig ModelConfig::read(std::istream& in, const std::string& source) {
  ModelConfig config;
  config.merge_from(in, source);
  return config;
}

}  // namespace wordvec
