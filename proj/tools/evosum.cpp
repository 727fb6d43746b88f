// evosum: train, evaluate and apply genetic-algorithm summarization models.
//
//   evosum train --train-dir DIR [--vocab-dir DIR] [--train-limit N] ...
//   evosum eval --weights FILE --test-dir DIR [--test-limit N]
//   evosum summarize --weights FILE INPUT
//   evosum grid --train-dir DIR --test-dir DIR --cell 50:50 --cell 100:1000 ...
//
// Every flag can also be set through an EVOSUM_* environment variable
// (e.g. EVOSUM_SEED); command-line flags win.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evosum/commands.hpp"

namespace {

std::string env_name(const std::string& flag) {
  std::string name = "EVOSUM_";
  for (char c : flag) name += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return name;
}

template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_name(name));
}

void add_ga_options(CLI::App* app, evosum::RunManifest& m) {
  flag(app, "population", m.config.population_size, "Population size")
      ->capture_default_str()->check(CLI::PositiveNumber);
  flag(app, "generations", m.config.generations, "Generations after the initial population")
      ->capture_default_str();
  flag(app, "crossover-rate", m.config.crossover_rate, "Two-point crossover probability per pair")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  flag(app, "mutation-rate", m.config.mutation_gene_rate, "Per-gene deletion probability")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  flag(app, "tournament", m.config.tournament_size, "Tournament size")
      ->capture_default_str()->check(CLI::PositiveNumber);
  flag(app, "threshold", m.config.threshold, "Sentence weight threshold (strictly greater)")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  flag(app, "seed", m.config.seed, "Random seed")->capture_default_str();
  flag(app, "threads", m.threads, "Fitness evaluation threads (0 = all cores)")
      ->capture_default_str();
}

void add_train_options(CLI::App* app, evosum::RunManifest& m) {
  flag(app, "train-dir", m.train_dir, "Directory of training stories");
  flag(app, "vocab-dir", m.vocab_dir, "Directory of vocabulary stories (default: train dir)");
  flag(app, "train-limit", m.train_limit, "Number of training stories");
  flag(app, "vocab-limit", m.vocab_limit, "Number of vocabulary stories");
  app->add_flag("--vocab-exclude-references", "Build the vocabulary from article lines only")
      ->envname("EVOSUM_VOCAB_EXCLUDE_REFERENCES");
  flag(app, "stats-out", m.stats_out, "Per-generation statistics CSV")->capture_default_str();
  app->add_flag("--quiet", "Suppress per-generation progress");
  add_ga_options(app, m);
}

std::vector<evosum::GridCell> parse_cells(const std::vector<std::string>& specs) {
  std::vector<evosum::GridCell> cells;
  for (const auto& spec : specs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--cell", "expected TRAIN:VOCAB");
    try {
      cells.push_back({std::stoul(spec.substr(0, colon)), std::stoul(spec.substr(colon + 1))});
    } catch (const std::exception&) {
      throw CLI::ValidationError("--cell", "expected TRAIN:VOCAB, got '" + spec + "'");
    }
  }
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genetic-algorithm extractive summarization"};
  app.require_subcommand(1);

  evosum::RunManifest manifest;

  auto* train = app.add_subcommand("train", "Evolve token weights on a training corpus");
  add_train_options(train, manifest);
  flag(train, "weights-out", manifest.weights_out, "Output weights file")->capture_default_str();
  train->get_option("--train-dir")->required();

  std::filesystem::path weights;
  std::filesystem::path test_dir;
  std::optional<std::size_t> test_limit;
  std::size_t test_offset = 0;

  auto* eval = app.add_subcommand("eval", "Score a weights file on a test corpus");
  flag(eval, "weights", weights, "Weights file")->required();
  flag(eval, "test-dir", test_dir, "Directory of test stories")->required();
  flag(eval, "test-limit", test_limit, "Number of test stories");
  flag(eval, "test-offset", test_offset, "Valid stories skipped before the test set");

  std::filesystem::path input;
  auto* summarize = app.add_subcommand("summarize", "Print the sentences a model selects");
  flag(summarize, "weights", weights, "Weights file")->required();
  summarize->add_option("input", input, "Story or plain-text file")->required();

  std::vector<std::string> cell_specs{"100:90000", "100:1000", "100:50",
                                      "50:90000",  "50:1000",  "50:50"};
  std::filesystem::path out_dir = "grid";
  std::filesystem::path summary_csv = "grid_summary.csv";
  auto* grid = app.add_subcommand("grid", "Run train + eval over (train, vocab) size pairs");
  add_train_options(grid, manifest);
  grid->get_option("--train-dir")->required();
  flag(grid, "test-dir", manifest.test_dir, "Directory of test stories")->required();
  flag(grid, "test-limit", manifest.test_limit, "Number of test stories");
  flag(grid, "test-offset", manifest.test_offset, "Valid stories skipped before the test set");
  grid->add_option("--cell", cell_specs, "TRAIN:VOCAB pair, repeatable")->capture_default_str();
  flag(grid, "out-dir", out_dir, "Directory for per-cell weights and stats")->capture_default_str();
  flag(grid, "summary-out", summary_csv, "Summary CSV")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : {train, grid}) {
    if (sub->parsed()) {
      manifest.vocab_include_references = sub->count("--vocab-exclude-references") == 0;
      manifest.verbose = sub->count("--quiet") == 0;
    }
  }

  if (train->parsed()) return evosum::cmd_train(manifest, std::cout, std::cerr);
  if (eval->parsed()) {
    return evosum::cmd_eval(weights, test_dir, test_limit, std::cout, std::cerr, test_offset);
  }
  if (summarize->parsed()) return evosum::cmd_summarize(weights, input, std::cout, std::cerr);
  if (grid->parsed()) {
    std::vector<evosum::GridCell> cells;
    try {
      cells = parse_cells(cell_specs);
    } catch (const CLI::Error& e) {
      return app.exit(e);
    }
    return evosum::cmd_experiment_grid(manifest, cells, out_dir, summary_csv, std::cout, std::cerr);
  }
  return 1;
}
