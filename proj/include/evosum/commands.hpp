#pragma once

// Subcommand implementations behind the evosum CLI. Each cmd_* function
// returns a process exit status and never throws; diagnostics go to `err`.
// Scores are printed as internal [0, 1] values x 100 with two decimals.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "evosum/corpus.hpp"
#include "evosum/error.hpp"
#include "evosum/ga.hpp"
#include "evosum/model_io.hpp"
#include "evosum/random.hpp"
#include "evosum/summarizer.hpp"
#include "evosum/vocab.hpp"

namespace evosum {

struct RunManifest {
  GaConfig config;
  std::filesystem::path train_dir;
  /// Defaults to train_dir when empty.
  std::filesystem::path vocab_dir;
  std::filesystem::path test_dir;
  std::optional<std::size_t> train_limit;
  std::optional<std::size_t> vocab_limit;
  std::optional<std::size_t> test_limit;
  /// Valid documents of test_dir skipped before the test set starts.
  std::size_t test_offset = 0;
  bool vocab_include_references = true;
  std::filesystem::path weights_out = "weights.txt";
  std::filesystem::path stats_out = "stats.csv";
  std::size_t threads = 0;
  bool verbose = true;
};

struct GridCell {
  std::size_t train_limit = 0;
  std::size_t vocab_limit = 0;
};

/// Renders a [0, 1] score on the x100 reporting scale.
inline std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", score * 100.0);
  return buf;
}

namespace detail {

inline void require_directory(const std::filesystem::path& dir, std::string_view what) {
  std::error_code ec;
  if (dir.empty() || !std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIoFailure, std::string(what) + " directory '" + dir.string() +
                                           "' does not exist");
  }
}

inline void require_limit(const std::optional<std::size_t>& limit, std::string_view what) {
  if (limit && *limit == 0) {
    throw Error(ErrorCode::kInvalidConfig, std::string(what) + " limit must be at least 1");
  }
}

inline WarningSink warning_sink(std::ostream& err) {
  return [&err](const std::string& message) { err << "warning: " << message << '\n'; };
}

struct TrainOutcome {
  TrainedModel model;
  std::size_t train_docs = 0;
};

inline TrainOutcome run_train(const RunManifest& m, std::ostream& err) {
  m.config.validate();
  require_directory(m.train_dir, "training");
  const auto vocab_dir = m.vocab_dir.empty() ? m.train_dir : m.vocab_dir;
  require_directory(vocab_dir, "vocabulary");
  require_limit(m.train_limit, "training");
  require_limit(m.vocab_limit, "vocabulary");

  CorpusOptions train_opts;
  train_opts.limit = m.train_limit;
  train_opts.warn = warning_sink(err);
  const auto train = load_corpus(m.train_dir, train_opts);
  if (train.empty()) throw Error(ErrorCode::kEmptyCorpus, "no valid training documents");

  CorpusOptions vocab_opts;
  vocab_opts.limit = m.vocab_limit;
  vocab_opts.warn = warning_sink(err);
  const auto vocab_docs = load_corpus(vocab_dir, vocab_opts);
  const Vocabulary vocab =
      build_vocabulary(vocab_docs, VocabularyOptions{m.vocab_include_references});
  if (vocab.empty()) throw Error(ErrorCode::kEmptyCorpus, "vocabulary corpus produced no tokens");

  if (m.verbose) {
    err << "train_docs " << train.size() << " vocab_docs " << vocab_docs.size() << " vocab_size "
        << vocab.size() << '\n';
  }
  ProgressSink progress;
  if (m.verbose) {
    progress = [&err](const GenerationStats& s) {
      err << "generation " << s.generation << " min " << format_score(s.min_fitness) << " mean "
          << format_score(s.mean_fitness) << " max " << format_score(s.max_fitness) << " best "
          << format_score(s.best_so_far) << '\n';
    };
  }
  TrainOutcome outcome{evolve(m.config, train, vocab, progress, m.threads), train.size()};

  std::ostringstream weights;
  write_weights(weights, outcome.model);
  std::ostringstream stats;
  write_stats_csv(stats, outcome.model.stats);
  write_text_file(m.weights_out, weights.str());
  write_text_file(m.stats_out, stats.str());
  return outcome;
}

inline CorpusEvaluation run_eval(const std::filesystem::path& weights_path,
                                 const std::filesystem::path& test_dir,
                                 std::optional<std::size_t> test_limit, std::size_t test_offset,
                                 std::ostream& err, std::size_t* doc_count = nullptr) {
  require_directory(test_dir, "test");
  require_limit(test_limit, "test");
  const TrainedModel model = load_weights(weights_path);
  CorpusOptions opts;
  opts.limit = test_limit;
  opts.skip = test_offset;
  opts.warn = warning_sink(err);
  const auto docs = load_corpus(test_dir, opts);
  if (docs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no valid test documents");
  if (doc_count) *doc_count = docs.size();
  return evaluate_corpus(model.best, docs, model.vocabulary, model.config.threshold);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace detail

inline int cmd_train(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto outcome = detail::run_train(manifest, err);
    out << "train_docs " << outcome.train_docs << '\n';
    out << "vocab_size " << outcome.model.vocabulary.size() << '\n';
    out << "train_score " << format_score(outcome.model.best_fitness) << '\n';
  });
}

inline int cmd_eval(const std::filesystem::path& weights_path, const std::filesystem::path& test_dir,
                    std::optional<std::size_t> test_limit, std::ostream& out, std::ostream& err,
                    std::size_t test_offset = 0) {
  return detail::guarded(err, [&] {
    std::size_t docs = 0;
    const auto e = detail::run_eval(weights_path, test_dir, test_limit, test_offset, err, &docs);
    out << "test_docs " << docs << '\n';
    out << "score " << format_score(e.score) << '\n';
    out << "precision " << format_score(e.precision) << '\n';
    out << "recall " << format_score(e.recall) << '\n';
    out << "f1 " << format_score(e.f1) << '\n';
  });
}

/// Prints the selected article lines of `input_file`, one per line. Lines
/// after a highlight marker are ignored.
inline int cmd_summarize(const std::filesystem::path& weights_path,
                         const std::filesystem::path& input_file, std::ostream& out,
                         std::ostream& err) {
  return detail::guarded(err, [&] {
    const TrainedModel model = load_weights(weights_path);
    Document doc;
    doc.id = input_file.stem().string();
    doc.sentences = parse_sentences(read_file(input_file));
    const Summary summary = summarize(doc, model.best, model.vocabulary, model.config.threshold);
    for (auto index : summary.selected) out << doc.sentences[index].text << '\n';
  });
}

/// Runs train + eval for every cell. Cell i trains with
/// derive_seed(base.config.seed, i) and writes its artifacts into
/// `out_dir` as cell<i>.weights / cell<i>.stats.csv.
inline int cmd_experiment_grid(const RunManifest& base, const std::vector<GridCell>& grid,
                               const std::filesystem::path& out_dir,
                               const std::filesystem::path& summary_csv, std::ostream& out,
                               std::ostream& err) {
  return detail::guarded(err, [&] {
    if (grid.empty()) throw Error(ErrorCode::kInvalidConfig, "grid has no cells");
    detail::require_directory(base.test_dir, "test");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::kIoFailure, "cannot create '" + out_dir.string() + "'");

    std::ostringstream csv;
    csv << "train_size,vocab_size,train_score,test_score\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      RunManifest m = base;
      m.train_limit = grid[i].train_limit;
      m.vocab_limit = grid[i].vocab_limit;
      m.config.seed = derive_seed(base.config.seed, i);
      m.weights_out = out_dir / ("cell" + std::to_string(i) + ".weights");
      m.stats_out = out_dir / ("cell" + std::to_string(i) + ".stats.csv");
      err << "cell " << i << " train " << grid[i].train_limit << " vocab " << grid[i].vocab_limit
          << " seed " << m.config.seed << '\n';
      const auto trained = detail::run_train(m, err);
      const auto tested =
          detail::run_eval(m.weights_out, m.test_dir, m.test_limit, m.test_offset, err);
      const std::string row = std::to_string(grid[i].train_limit) + "," +
                              std::to_string(grid[i].vocab_limit) + "," +
                              format_score(trained.model.best_fitness) + "," +
                              format_score(tested.score);
      csv << row << '\n';
      out << row << '\n';
    }
    write_text_file(summary_csv, csv.str());
  });
}

}  // namespace evosum
