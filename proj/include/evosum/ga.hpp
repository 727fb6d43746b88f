#pragma once

// Genetic algorithm over per-token weight vectors.
//
// Generation loop (all randomness from one Rng seeded with config.seed,
// consumed in this order):
//   init:  population_size x vocab_size uniform01() draws, row-major.
//   then, per generation:
//     1. population_size tournaments, each tournament_size uniform_index(N).
//     2. for each consecutive pair (0,1), (2,3), ...: one uniform01() for the
//        crossover decision; if it fires, cut i = uniform_index(L) and
//        j = i + 1 + uniform_index(L - i), and genes [i, j) are swapped.
//        An odd trailing parent is passed through without a draw.
//     3. for every offspring in order, one uniform01() per gene; genes whose
//        draw is below mutation_gene_rate become 0.
//     4. offspring replace the population (no elitism) and are re-evaluated.
// Fitness evaluation draws no random numbers, so it may run on any number of
// threads without changing the result. The best individual ever evaluated is
// kept aside as the hall of fame.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evosum/corpus.hpp"
#include "evosum/error.hpp"
#include "evosum/random.hpp"
#include "evosum/rouge.hpp"
#include "evosum/summarizer.hpp"
#include "evosum/vocab.hpp"

namespace evosum {

struct GaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 15;
  double crossover_rate = 0.8;
  /// Per-gene probability of deletion, applied to every offspring.
  double mutation_gene_rate = 0.01;
  std::size_t tournament_size = 5;
  double threshold = 0.6;
  std::uint64_t seed = 0;

  void validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); };
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (population_size == 0) fail("population size must be positive");
    if (tournament_size == 0) fail("tournament size must be positive");
    if (tournament_size > population_size) fail("tournament size exceeds population size");
    if (!unit(crossover_rate)) fail("crossover rate outside [0, 1]");
    if (!unit(mutation_gene_rate)) fail("mutation rate outside [0, 1]");
    if (!unit(threshold)) fail("threshold outside [0, 1]");
  }

  friend bool operator==(const GaConfig&, const GaConfig&) = default;
};

struct GenerationStats {
  std::size_t generation = 0;
  double min_fitness = 0.0;
  double mean_fitness = 0.0;
  double max_fitness = 0.0;
  double best_so_far = 0.0;

  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

struct TrainedModel {
  Vocabulary vocabulary;
  Chromosome best;
  double best_fitness = 0.0;
  GaConfig config;
  std::vector<GenerationStats> stats;
};

// --- operators ------------------------------------------------------------

inline std::vector<Chromosome> init_population(Rng& rng, std::size_t vocab_size,
                                               std::size_t population_size) {
  if (vocab_size == 0) throw Error(ErrorCode::kInvalidConfig, "vocabulary is empty");
  std::vector<Chromosome> population(population_size);
  for (auto& c : population) {
    c.weights.resize(vocab_size);
    for (auto& w : c.weights) w = rng.uniform01();
  }
  return population;
}

/// Swaps genes [begin, end) between `a` and `b`.
inline void swap_segment(Chromosome& a, Chromosome& b, std::size_t begin, std::size_t end) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "crossover parents differ in length");
  }
  if (begin > end || end > a.size()) {
    throw Error(ErrorCode::kInvalidConfig, "crossover segment out of range");
  }
  std::swap_ranges(a.weights.begin() + static_cast<std::ptrdiff_t>(begin),
                   a.weights.begin() + static_cast<std::ptrdiff_t>(end),
                   b.weights.begin() + static_cast<std::ptrdiff_t>(begin));
}

/// Draws cut points i in [0, L-1], j in (i, L] and swaps [i, j) in place.
inline void two_point_crossover_in_place(Rng& rng, Chromosome& a, Chromosome& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "crossover parents differ in length");
  }
  const std::size_t len = a.size();
  if (len < 2) throw Error(ErrorCode::kInvalidConfig, "crossover needs at least two genes");
  const std::size_t i = rng.uniform_index(len);
  const std::size_t j = i + 1 + rng.uniform_index(len - i);
  swap_segment(a, b, i, j);
}

inline std::pair<Chromosome, Chromosome> two_point_crossover(Rng& rng, const Chromosome& a,
                                                             const Chromosome& b) {
  std::pair<Chromosome, Chromosome> children{a, b};
  two_point_crossover_in_place(rng, children.first, children.second);
  return children;
}

inline void deletion_mutation_in_place(Rng& rng, Chromosome& c, double gene_rate) {
  for (auto& w : c.weights) {
    if (rng.uniform01() < gene_rate) w = 0.0;
  }
}

inline Chromosome deletion_mutation(Rng& rng, Chromosome c, double gene_rate) {
  deletion_mutation_in_place(rng, c, gene_rate);
  return c;
}

/// Index of the winner of one tournament: k contestants drawn with
/// replacement, highest fitness wins, ties go to the lowest index.
inline std::size_t tournament_select_index(Rng& rng, std::span<const double> fitnesses,
                                           std::size_t k) {
  if (fitnesses.empty()) throw Error(ErrorCode::kEmptyCorpus, "tournament over empty population");
  if (k == 0) throw Error(ErrorCode::kInvalidConfig, "tournament size must be positive");
  std::size_t winner = rng.uniform_index(fitnesses.size());
  for (std::size_t n = 1; n < k; ++n) {
    const std::size_t contestant = rng.uniform_index(fitnesses.size());
    if (fitnesses[contestant] > fitnesses[winner] ||
        (fitnesses[contestant] == fitnesses[winner] && contestant < winner)) {
      winner = contestant;
    }
  }
  return winner;
}

inline Chromosome tournament_select(Rng& rng, std::span<const Chromosome> population,
                                    std::span<const double> fitnesses, std::size_t k) {
  if (population.size() != fitnesses.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "population and fitnesses differ in length");
  }
  return population[tournament_select_index(rng, fitnesses, k)];
}

// --- fitness ----------------------------------------------------------------

struct CorpusEvaluation {
  double score = 0.0;  ///< mean of rouge_mean over documents (the fitness)
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline CorpusEvaluation evaluate_corpus(const Chromosome& chromosome,
                                        std::span<const Document> corpus, const Vocabulary& vocab,
                                        double threshold) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no documents to evaluate");
  check_dimensions(chromosome, vocab);
  CorpusEvaluation total;
  for (const auto& doc : corpus) {
    const Summary summary = summarize(doc, chromosome, vocab, threshold);
    const RougeScore s = rouge1(summary.tokens, doc.reference);
    total.score += rouge_mean(s);
    total.precision += s.precision;
    total.recall += s.recall;
    total.f1 += s.f1;
  }
  const auto n = static_cast<double>(corpus.size());
  total.score /= n;
  total.precision /= n;
  total.recall /= n;
  total.f1 /= n;
  return total;
}

inline double evaluate_fitness(const Chromosome& chromosome, std::span<const Document> corpus,
                               const Vocabulary& vocab, double threshold) {
  return evaluate_corpus(chromosome, corpus, vocab, threshold).score;
}

/// Precompiled form of a training corpus for repeated fitness evaluation.
/// Produces bit-identical values to evaluate_fitness: same summation order,
/// same overlap counts, same score arithmetic.
class FitnessEvaluator {
 public:
  FitnessEvaluator(std::span<const Document> corpus, const Vocabulary& vocab, double threshold)
      : vocab_size_(vocab.size()), threshold_(threshold) {
    if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no documents to evaluate");
    docs_.reserve(corpus.size());
    for (const auto& doc : corpus) {
      if (doc.reference.empty()) {
        throw Error(ErrorCode::kEmptyReference, "document '" + doc.id + "' has no reference");
      }
      CompiledDoc compiled;
      std::unordered_map<std::string_view, std::uint32_t> local;
      auto local_id = [&](const Token& t) {
        return local.try_emplace(t, static_cast<std::uint32_t>(local.size())).first->second;
      };
      for (const auto& sentence : doc.sentences) {
        if (sentence.tokens.empty()) {
          throw Error(ErrorCode::kEmptySentence, "document '" + doc.id + "'");
        }
        CompiledSentence cs;
        for (const auto& token : sentence.tokens) {
          const auto id = vocab.lookup(token);
          cs.global.push_back(id ? *id : kUnknown);
          cs.local.push_back(local_id(token));
        }
        compiled.sentences.push_back(std::move(cs));
      }
      std::vector<std::uint32_t> ref_ids;
      for (const auto& token : doc.reference) ref_ids.push_back(local_id(token));
      compiled.reference_counts.assign(local.size(), 0);
      for (auto id : ref_ids) ++compiled.reference_counts[id];
      compiled.reference_len = doc.reference.size();
      max_local_ = std::max(max_local_, local.size());
      docs_.push_back(std::move(compiled));
    }
  }

  double operator()(const Chromosome& chromosome) const {
    if (chromosome.size() != vocab_size_) {
      throw Error(ErrorCode::kDimensionMismatch, "chromosome length does not match vocabulary");
    }
    std::vector<std::uint32_t> candidate_counts(max_local_);
    double total = 0.0;
    for (const auto& doc : docs_) {
      std::fill_n(candidate_counts.begin(), doc.reference_counts.size(), 0u);
      std::size_t overlap = 0;
      std::size_t candidate_len = 0;
      for (const auto& s : doc.sentences) {
        double sum = 0.0;
        for (auto g : s.global) {
          if (g != kUnknown) sum += chromosome.weights[g];
        }
        if (sum / static_cast<double>(s.global.size()) > threshold_) {
          for (auto l : s.local) {
            if (++candidate_counts[l] <= doc.reference_counts[l]) ++overlap;
          }
          candidate_len += s.local.size();
        }
      }
      total += rouge_mean(rouge_from_overlap(overlap, candidate_len, doc.reference_len));
    }
    return total / static_cast<double>(docs_.size());
  }

  std::size_t vocab_size() const { return vocab_size_; }

 private:
  static constexpr std::size_t kUnknown = std::numeric_limits<std::size_t>::max();

  struct CompiledSentence {
    std::vector<std::size_t> global;
    std::vector<std::uint32_t> local;
  };
  struct CompiledDoc {
    std::vector<CompiledSentence> sentences;
    std::vector<std::uint32_t> reference_counts;
    std::size_t reference_len = 0;
  };

  std::vector<CompiledDoc> docs_;
  std::size_t vocab_size_;
  std::size_t max_local_ = 0;
  double threshold_;
};

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Fitness of every individual; `threads` == 0 uses all cores.
inline std::vector<double> evaluate_population(const FitnessEvaluator& evaluator,
                                               std::span<const Chromosome> population,
                                               std::size_t threads = 0) {
  std::vector<double> fitness(population.size());
  const std::size_t workers = std::min(resolve_threads(threads), population.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < population.size(); ++i) fitness[i] = evaluator(population[i]);
    return fitness;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = next++; i < population.size(); i = next++) {
          try {
            fitness[i] = evaluator(population[i]);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return fitness;
}

// --- evolution --------------------------------------------------------------

using ProgressSink = std::function<void(const GenerationStats&)>;

namespace detail {

struct HallOfFame {
  Chromosome best;
  double fitness = -1.0;

  void offer(std::span<const Chromosome> population, std::span<const double> fitnesses) {
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (fitnesses[i] > fitness) {
        fitness = fitnesses[i];
        best = population[i];
      }
    }
  }
};

inline GenerationStats summarize_generation(std::size_t generation,
                                            std::span<const double> fitnesses,
                                            double best_so_far) {
  GenerationStats s;
  s.generation = generation;
  s.min_fitness = *std::min_element(fitnesses.begin(), fitnesses.end());
  s.max_fitness = *std::max_element(fitnesses.begin(), fitnesses.end());
  double sum = 0.0;
  for (double f : fitnesses) sum += f;
  // Rounding in the sum can push the mean a hair outside [min, max].
  s.mean_fitness =
      std::clamp(sum / static_cast<double>(fitnesses.size()), s.min_fitness, s.max_fitness);
  s.best_so_far = best_so_far;
  return s;
}

}  // namespace detail

using PopulationObserver = std::function<void(std::size_t generation,
                                              std::span<const Chromosome> population,
                                              std::span<const double> fitnesses)>;

struct EvolveOptions {
  ProgressSink progress;
  /// Sees every evaluated population, generation 0 included.
  PopulationObserver on_population;
  /// Fitness evaluation threads; 0 uses all cores.
  std::size_t threads = 0;
};

inline TrainedModel evolve(const GaConfig& config, std::span<const Document> corpus,
                           const Vocabulary& vocab, const EvolveOptions& options) {
  config.validate();
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "training corpus is empty");
  if (vocab.empty()) throw Error(ErrorCode::kInvalidConfig, "vocabulary is empty");

  const FitnessEvaluator evaluator(corpus, vocab, config.threshold);
  const std::size_t n = config.population_size;
  const std::size_t len = vocab.size();
  Rng rng(config.seed);

  TrainedModel model;
  model.vocabulary = vocab;
  model.config = config;

  std::vector<Chromosome> population = init_population(rng, len, n);
  std::vector<double> fitness = evaluate_population(evaluator, population, options.threads);
  detail::HallOfFame hof;
  hof.offer(population, fitness);

  auto record = [&](std::size_t generation) {
    if (options.on_population) options.on_population(generation, population, fitness);
    model.stats.push_back(detail::summarize_generation(generation, fitness, hof.fitness));
    if (options.progress) options.progress(model.stats.back());
  };
  record(0);

  std::vector<Chromosome> offspring;
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    offspring.clear();
    offspring.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      offspring.push_back(population[tournament_select_index(rng, fitness, config.tournament_size)]);
    }
    for (std::size_t i = 0; i + 1 < n; i += 2) {
      // The decision draw is always consumed; a single-gene vocabulary has no
      // segment to swap.
      if (rng.uniform01() < config.crossover_rate && len >= 2) {
        two_point_crossover_in_place(rng, offspring[i], offspring[i + 1]);
      }
    }
    for (auto& child : offspring) deletion_mutation_in_place(rng, child, config.mutation_gene_rate);

    population.swap(offspring);
    fitness = evaluate_population(evaluator, population, options.threads);
    hof.offer(population, fitness);
    record(gen);
  }

  model.best = std::move(hof.best);
  model.best_fitness = hof.fitness;
  return model;
}

inline TrainedModel evolve(const GaConfig& config, std::span<const Document> corpus,
                           const Vocabulary& vocab, const ProgressSink& progress = {},
                           std::size_t threads = 0) {
  EvolveOptions options;
  options.progress = progress;
  options.threads = threads;
  return evolve(config, corpus, vocab, options);
}

}  // namespace evosum
