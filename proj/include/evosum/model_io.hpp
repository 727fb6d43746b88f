#pragma once

// Weights file (UTF-8):
//
//   evosum-weights v1
//   threshold <decimal>
//   vocab_size <count>
//   <token>\t<weight>        one line per id, in id order
//
// Reals are written as the shortest decimal that round-trips to the same
// double (std::to_chars), so save -> load -> save is byte-identical.
//
// Stats file: CSV with header "generation,min,mean,max,best_so_far".

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "evosum/corpus.hpp"
#include "evosum/error.hpp"
#include "evosum/ga.hpp"

namespace evosum {

inline constexpr std::string_view kWeightsMagic = "evosum-weights v1";
inline constexpr std::string_view kStatsHeader = "generation,min,mean,max,best_so_far";

inline std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw Error(ErrorCode::kIoFailure, "cannot format real");
  return std::string(buf, end);
}

namespace detail {

[[noreturn]] inline void malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedFile, "line " + std::to_string(line_no) + ": " + what);
}

inline double parse_real(std::string_view s, std::size_t line_no) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    malformed(line_no, "invalid number '" + std::string(s) + "'");
  }
  return x;
}

inline std::size_t parse_count(std::string_view s, std::size_t line_no) {
  std::size_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    malformed(line_no, "invalid count '" + std::string(s) + "'");
  }
  return x;
}

inline std::string_view expect_field(std::string_view line, std::string_view key,
                                     std::size_t line_no) {
  if (line.size() <= key.size() + 1 || line.substr(0, key.size()) != key ||
      line[key.size()] != ' ') {
    malformed(line_no, "expected '" + std::string(key) + " <value>'");
  }
  return line.substr(key.size() + 1);
}

inline bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n\f\v") != std::string_view::npos;
}

}  // namespace detail

inline void write_weights(std::ostream& out, const Vocabulary& vocab, const Chromosome& weights,
                          double threshold) {
  check_dimensions(weights, vocab);
  out << kWeightsMagic << '\n';
  out << "threshold " << format_real(threshold) << '\n';
  out << "vocab_size " << vocab.size() << '\n';
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    out << vocab.token(id) << '\t' << format_real(weights.weights[id]) << '\n';
  }
}

inline void write_weights(std::ostream& out, const TrainedModel& model) {
  write_weights(out, model.vocabulary, model.best, model.config.threshold);
}

/// Parses a weights file. Errors are kMalformedFile and name the 1-based line.
/// The returned model carries the stored threshold and default GA settings.
inline TrainedModel parse_weights(std::string_view text) {
  std::vector<std::string_view> lines;
  detail::for_each_line(text, [&](std::string_view l) { lines.push_back(l); });

  if (lines.empty() || lines[0] != kWeightsMagic) {
    detail::malformed(1, "expected header '" + std::string(kWeightsMagic) + "'");
  }
  if (lines.size() < 3) detail::malformed(lines.size() + 1, "truncated header");

  TrainedModel model;
  model.config.threshold = detail::parse_real(detail::expect_field(lines[1], "threshold", 2), 2);
  if (!(model.config.threshold >= 0.0 && model.config.threshold <= 1.0)) {
    detail::malformed(2, "threshold outside [0, 1]");
  }
  const std::size_t vocab_size =
      detail::parse_count(detail::expect_field(lines[2], "vocab_size", 3), 3);
  if (lines.size() - 3 < vocab_size) {
    detail::malformed(lines.size() + 1, "missing entry; vocab_size is " + std::to_string(vocab_size));
  }
  if (lines.size() - 3 > vocab_size) {
    detail::malformed(vocab_size + 4, "entry beyond vocab_size " + std::to_string(vocab_size));
  }

  std::vector<Token> tokens;
  tokens.reserve(vocab_size);
  model.best.weights.reserve(vocab_size);
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) detail::malformed(line_no, "missing TAB separator");
    const std::string_view token = line.substr(0, tab);
    if (token.empty() || detail::has_whitespace(token)) {
      detail::malformed(line_no, "invalid token");
    }
    const double w = detail::parse_real(line.substr(tab + 1), line_no);
    if (!(w >= 0.0 && w <= 1.0)) detail::malformed(line_no, "weight outside [0, 1]");
    tokens.emplace_back(token);
    model.best.weights.push_back(w);
  }

  const std::size_t before = tokens.size();
  Vocabulary vocab;
  for (std::size_t i = 0; i < before; ++i) {
    if (!vocab.add(tokens[i])) detail::malformed(i + 4, "duplicate token '" + tokens[i] + "'");
  }
  model.vocabulary = std::move(vocab);
  return model;
}

inline TrainedModel load_weights(const std::filesystem::path& path) {
  return parse_weights(read_file(path));
}

inline void write_stats_csv(std::ostream& out, std::span<const GenerationStats> stats) {
  out << kStatsHeader << '\n';
  for (const auto& s : stats) {
    out << s.generation << ',' << format_real(s.min_fitness) << ',' << format_real(s.mean_fitness)
        << ',' << format_real(s.max_fitness) << ',' << format_real(s.best_so_far) << '\n';
  }
}

inline std::vector<GenerationStats> parse_stats_csv(std::string_view text) {
  std::vector<GenerationStats> stats;
  std::size_t line_no = 0;
  detail::for_each_line(text, [&](std::string_view line) {
    ++line_no;
    if (line_no == 1) {
      if (line != kStatsHeader) detail::malformed(1, "unexpected stats header");
      return;
    }
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string_view::npos; start = pos + 1) {
      cells.push_back(line.substr(start, pos - start));
    }
    cells.push_back(line.substr(start));
    if (cells.size() != 5) detail::malformed(line_no, "expected 5 columns");
    GenerationStats s;
    s.generation = detail::parse_count(cells[0], line_no);
    s.min_fitness = detail::parse_real(cells[1], line_no);
    s.mean_fitness = detail::parse_real(cells[2], line_no);
    s.max_fitness = detail::parse_real(cells[3], line_no);
    s.best_so_far = detail::parse_real(cells[4], line_no);
    stats.push_back(s);
  });
  if (line_no == 0) detail::malformed(1, "empty stats file");
  return stats;
}

/// Writes `content` to `path` or throws kIoFailure.
inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write '" + path.string() + "'");
}

}  // namespace evosum
