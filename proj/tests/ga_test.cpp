#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "evosum/ga.hpp"
#include "test_util.hpp"

namespace evosum {
namespace {

Chromosome random_chromosome(Rng& rng, std::size_t len) {
  Chromosome c{std::vector<double>(len)};
  for (auto& w : c.weights) w = rng.uniform01();
  return c;
}

std::vector<Document> fixture_corpus(std::size_t limit) {
  CorpusOptions opts;
  opts.limit = limit;
  opts.warn = nullptr;
  return load_corpus(testing::fixture_dir(), opts);
}

TEST(Rng, UniformIndexStaysInRange) {
  Rng rng(9);
  for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
    for (int i = 0; i < 1000; ++i) ASSERT_LT(rng.uniform_index(n), n);
  }
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

TEST(InitPopulation, ShapeAndRange) {
  Rng rng(1);
  const auto pop = init_population(rng, 3, 2);
  ASSERT_EQ(pop.size(), 2u);
  for (const auto& c : pop) {
    EXPECT_EQ(c.size(), 3u);
    EXPECT_TRUE(weights_in_range(c));
  }
}

TEST(InitPopulation, SameSeedSamePopulation) {
  Rng a(42);
  Rng b(42);
  Rng c(43);
  const auto pa = init_population(a, 50, 10);
  EXPECT_EQ(pa, init_population(b, 50, 10));
  EXPECT_NE(pa, init_population(c, 50, 10));
}

TEST(InitPopulation, GenesLookUniform) {
  Rng rng(3);
  const auto pop = init_population(rng, 1000, 10);
  double sum = 0.0;
  for (const auto& c : pop) {
    for (double w : c.weights) sum += w;
  }
  EXPECT_NEAR(sum / 10000.0, 0.5, 0.02);
}

TEST(InitPopulation, EmptyVocabularyRejected) {
  Rng rng(1);
  EXPECT_THROW(init_population(rng, 0, 3), Error);
}

TEST(Crossover, FixedCutPoints) {
  Chromosome a{{0.0, 0.1, 0.2, 0.3}};
  Chromosome b{{1.0, 1.1, 1.2, 1.3}};
  swap_segment(a, b, 1, 3);
  EXPECT_EQ(a, (Chromosome{{0.0, 1.1, 1.2, 0.3}}));
  EXPECT_EQ(b, (Chromosome{{1.0, 0.1, 0.2, 1.3}}));
}

TEST(Crossover, IdenticalParents) {
  Rng rng(2);
  const Chromosome a{{0.25, 0.5, 0.75}};
  const auto [c1, c2] = two_point_crossover(rng, a, a);
  EXPECT_EQ(c1, a);
  EXPECT_EQ(c2, a);
}

TEST(Crossover, Errors) {
  Rng rng(2);
  try {
    two_point_crossover(rng, Chromosome{{0.1, 0.2}}, Chromosome{{0.1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  EXPECT_THROW(two_point_crossover(rng, Chromosome{{0.1}}, Chromosome{{0.2}}), Error);
}

TEST(CrossoverProperty, SwapsOneContiguousSegment) {
  Rng rng(4);
  std::map<std::pair<std::size_t, std::size_t>, int> seen;
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t len = 2 + rng.uniform_index(8);
    const auto a = random_chromosome(rng, len);
    const auto b = random_chromosome(rng, len);
    const auto [c1, c2] = two_point_crossover(rng, a, b);
    std::size_t first = len;
    std::size_t last = 0;
    for (std::size_t k = 0; k < len; ++k) {
      const bool swapped = c1.weights[k] == b.weights[k] && c2.weights[k] == a.weights[k];
      const bool kept = c1.weights[k] == a.weights[k] && c2.weights[k] == b.weights[k];
      ASSERT_TRUE(swapped || kept);
      if (swapped) {
        first = std::min(first, k);
        last = k;
      }
    }
    ASSERT_LT(first, len) << "segment must be non-empty";
    for (std::size_t k = first; k <= last; ++k) ASSERT_EQ(c1.weights[k], b.weights[k]);
    if (len == 3) ++seen[{first, last + 1}];
  }
  // All 6 segments [i, j) of a length-3 chromosome occur.
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Mutation, RateZeroAndOne) {
  Rng rng(5);
  const auto c = random_chromosome(rng, 100);
  EXPECT_EQ(deletion_mutation(rng, c, 0.0), c);
  const auto zero = deletion_mutation(rng, c, 1.0);
  EXPECT_TRUE(std::all_of(zero.weights.begin(), zero.weights.end(), [](double w) { return w == 0.0; }));
}

TEST(Mutation, DeletionCountWithinBinomialBand) {
  // n = 10000, p = 0.01: mean 100, sigma = sqrt(99) ~ 9.95.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Chromosome c{std::vector<double>(10000, 0.5)};
    const auto m = deletion_mutation(rng, c, 0.01);
    const auto zeros = std::count(m.weights.begin(), m.weights.end(), 0.0);
    EXPECT_NEAR(static_cast<double>(zeros), 100.0, 3.0 * std::sqrt(99.0)) << "seed " << seed;
    for (std::size_t k = 0; k < c.size(); ++k) {
      ASSERT_TRUE(m.weights[k] == 0.0 || m.weights[k] == 0.5);
    }
  }
}

TEST(Tournament, SingleIndividual) {
  Rng rng(6);
  const std::vector<Chromosome> pop{Chromosome{{0.3}}};
  const std::vector<double> fit{0.1};
  EXPECT_EQ(tournament_select(rng, pop, fit, 5), pop[0]);
}

TEST(Tournament, ReturnsBestContestant) {
  // Replay the draws to learn the contestants.
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::vector<double> fit{0.4, 0.9, 0.1, 0.9, 0.3};
    Rng replay(seed);
    std::vector<std::size_t> contestants;
    for (int i = 0; i < 3; ++i) contestants.push_back(replay.uniform_index(fit.size()));
    std::size_t expected = contestants[0];
    for (auto c : contestants) {
      if (fit[c] > fit[expected] || (fit[c] == fit[expected] && c < expected)) expected = c;
    }
    Rng rng(seed);
    ASSERT_EQ(tournament_select_index(rng, fit, 3), expected);
  }
}

TEST(Tournament, SelectionPressure) {
  Rng rng(7);
  std::vector<double> fit;
  for (int i = 1; i <= 10; ++i) fit.push_back(0.1 * i);
  std::vector<int> wins(10, 0);
  for (int i = 0; i < 10000; ++i) ++wins[tournament_select_index(rng, fit, 5)];
  for (int i = 0; i < 9; ++i) EXPECT_GT(wins[9], wins[i]);
}

TEST(Fitness, PerfectSummaryScoresOne) {
  const std::vector<Document> docs{parse_story("Alpha beta.\nGamma.\n@highlight\nAlpha beta.", "d")};
  const Vocabulary vocab(std::vector<Token>{"alpha", "beta", ".", "gamma"});
  const Chromosome c{{1.0, 1.0, 1.0, 0.0}};
  EXPECT_EQ(evaluate_fitness(c, docs, vocab, 0.6), 1.0);
}

TEST(Fitness, AllZeroScoresZero) {
  const auto docs = fixture_corpus(12);
  const Vocabulary vocab = build_vocabulary(docs);
  const Chromosome zero{std::vector<double>(vocab.size(), 0.0)};
  EXPECT_EQ(evaluate_fitness(zero, docs, vocab, 0.6), 0.0);
  EXPECT_EQ(evaluate_fitness(zero, docs, vocab, 0.0), 0.0);
}

TEST(Fitness, MeanOverDocuments) {
  // doc1 selects "the cat sat" against reference "the cat": mean 0.8222...
  // doc2 selects nothing: 0.
  const std::vector<Document> docs{
      parse_story("The cat sat\nDog.\n@highlight\nThe cat", "d1"),
      parse_story("Dog.\n@highlight\nthe", "d2")};
  const Vocabulary vocab(std::vector<Token>{"the", "cat", "sat", "dog", "."});
  const Chromosome c{{1.0, 1.0, 1.0, 0.0, 0.0}};
  const double s1 = (2.0 / 3.0 + 1.0 + 0.8) / 3.0;
  EXPECT_NEAR(evaluate_fitness(c, docs, vocab, 0.6), (s1 + 0.0) / 2.0, 1e-12);
}

TEST(Fitness, Errors) {
  const Vocabulary vocab(std::vector<Token>{"a"});
  try {
    evaluate_fitness(Chromosome{{1.0}}, {}, vocab, 0.6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
  const std::vector<Document> docs{parse_story("a\n@highlight\na", "d")};
  try {
    evaluate_fitness(Chromosome{{1.0, 0.5}}, docs, vocab, 0.6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(FitnessEvaluator, BitIdenticalToReferencePath) {
  const auto docs = fixture_corpus(12);
  // Vocabulary from a subset so that unknown tokens occur.
  const Vocabulary vocab = build_vocabulary(std::span(docs).first(4));
  Rng rng(8);
  for (double threshold : {0.0, 0.3, 0.5, 0.6}) {
    const FitnessEvaluator fast(docs, vocab, threshold);
    for (int trial = 0; trial < 200; ++trial) {
      auto c = random_chromosome(rng, vocab.size());
      if (trial % 3 == 0) c = deletion_mutation(rng, c, 0.5);
      ASSERT_EQ(fast(c), evaluate_fitness(c, docs, vocab, threshold));
    }
  }
}

TEST(EvaluatePopulation, ThreadCountDoesNotChangeResults) {
  const auto docs = fixture_corpus(12);
  const Vocabulary vocab = build_vocabulary(docs);
  Rng rng(9);
  const auto pop = init_population(rng, vocab.size(), 37);
  const FitnessEvaluator eval(docs, vocab, 0.5);
  const auto serial = evaluate_population(eval, pop, 1);
  EXPECT_EQ(evaluate_population(eval, pop, 4), serial);
  EXPECT_EQ(evaluate_population(eval, pop, 64), serial);
}

TEST(GaConfig, Validation) {
  GaConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.population_size, 100u);
  EXPECT_EQ(c.generations, 15u);
  EXPECT_EQ(c.crossover_rate, 0.8);
  EXPECT_EQ(c.mutation_gene_rate, 0.01);
  EXPECT_EQ(c.tournament_size, 5u);
  EXPECT_EQ(c.threshold, 0.6);
  c.tournament_size = 101;
  EXPECT_THROW(c.validate(), Error);
  c = GaConfig{};
  c.crossover_rate = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c = GaConfig{};
  c.population_size = 0;
  EXPECT_THROW(c.validate(), Error);
}

class EvolveTest : public ::testing::Test {
 protected:
  void SetUp() override {
    docs = testing::planted_signal_corpus(20, 99);
    vocab = build_vocabulary(docs);
  }
  std::vector<Document> docs;
  Vocabulary vocab;
};

TEST_F(EvolveTest, ZeroGenerations) {
  GaConfig config;
  config.generations = 0;
  config.population_size = 10;
  config.seed = 1;
  const auto model = evolve(config, docs, vocab);
  ASSERT_EQ(model.stats.size(), 1u);
  EXPECT_EQ(model.stats[0].generation, 0u);
  EXPECT_EQ(model.best_fitness, model.stats[0].max_fitness);
  EXPECT_EQ(evaluate_fitness(model.best, docs, vocab, config.threshold), model.best_fitness);
}

TEST_F(EvolveTest, DeterministicForSeedAndThreads) {
  GaConfig config;
  config.population_size = 20;
  config.generations = 5;
  config.seed = 123;
  const auto a = evolve(config, docs, vocab, {}, 1);
  const auto b = evolve(config, docs, vocab, {}, 4);
  EXPECT_EQ(a.stats, b.stats);
  EXPECT_EQ(a.best, b.best);
  config.seed = 124;
  EXPECT_NE(evolve(config, docs, vocab, {}, 2).stats, a.stats);
}

TEST_F(EvolveTest, InvariantsHoldEveryGeneration) {
  GaConfig config;
  config.population_size = 30;
  config.generations = 8;
  config.mutation_gene_rate = 0.05;
  config.seed = 5;
  EvolveOptions options;
  std::vector<GenerationStats> streamed;
  options.progress = [&](const GenerationStats& s) { streamed.push_back(s); };
  std::size_t observed = 0;
  options.on_population = [&](std::size_t gen, std::span<const Chromosome> pop,
                              std::span<const double> fit) {
    EXPECT_EQ(gen, observed++);
    ASSERT_EQ(pop.size(), 30u);
    for (std::size_t i = 0; i < pop.size(); ++i) {
      ASSERT_TRUE(weights_in_range(pop[i]));
      ASSERT_EQ(pop[i].size(), vocab.size());
      ASSERT_GE(fit[i], 0.0);
      ASSERT_LE(fit[i], 1.0);
    }
  };
  const auto model = evolve(config, docs, vocab, options);
  EXPECT_EQ(observed, 9u);
  EXPECT_EQ(streamed, model.stats);
  for (std::size_t g = 0; g < model.stats.size(); ++g) {
    const auto& s = model.stats[g];
    EXPECT_EQ(s.generation, g);
    EXPECT_LE(s.min_fitness, s.mean_fitness);
    EXPECT_LE(s.mean_fitness, s.max_fitness);
    EXPECT_GE(s.best_so_far, s.max_fitness);
    if (g > 0) {
      EXPECT_GE(s.best_so_far, model.stats[g - 1].best_so_far);
    }
  }
  EXPECT_EQ(model.best_fitness, model.stats.back().best_so_far);
  EXPECT_TRUE(weights_in_range(model.best));
}

TEST_F(EvolveTest, SelectionOnlyCopiesIndividuals) {
  GaConfig config;
  config.population_size = 16;
  config.generations = 6;
  config.crossover_rate = 0.0;
  config.mutation_gene_rate = 0.0;
  config.seed = 77;
  std::vector<Chromosome> previous;
  EvolveOptions options;
  options.on_population = [&](std::size_t gen, std::span<const Chromosome> pop,
                              std::span<const double>) {
    if (gen > 0) {
      for (const auto& c : pop) {
        ASSERT_NE(std::find(previous.begin(), previous.end(), c), previous.end());
      }
    }
    previous.assign(pop.begin(), pop.end());
  };
  evolve(config, docs, vocab, options);
}

TEST_F(EvolveTest, PlantedSignalImproves) {
  GaConfig config;
  config.seed = 2024;
  const auto model = evolve(config, docs, vocab);
  ASSERT_EQ(model.stats.size(), 16u);
  EXPECT_GT(model.best_fitness, model.stats.front().max_fitness);
}

TEST_F(EvolveTest, Preconditions) {
  GaConfig config;
  EXPECT_THROW(evolve(config, std::vector<Document>{}, vocab), Error);
  EXPECT_THROW(evolve(config, docs, Vocabulary{}), Error);
  config.tournament_size = 0;
  EXPECT_THROW(evolve(config, docs, vocab), Error);
}

}  // namespace
}  // namespace evosum
