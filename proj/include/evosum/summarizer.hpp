#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "evosum/corpus.hpp"
#include "evosum/error.hpp"
#include "evosum/vocab.hpp"

namespace evosum {

/// One weight in [0, 1] per vocabulary id.
struct Chromosome {
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// True when every weight lies in [0, 1]. NaN fails.
inline bool weights_in_range(const Chromosome& c) {
  for (double w : c.weights) {
    if (!(w >= 0.0 && w <= 1.0)) return false;
  }
  return true;
}

struct Summary {
  std::vector<std::size_t> selected;
  std::vector<Token> tokens;
};

inline void check_dimensions(const Chromosome& chromosome, const Vocabulary& vocab) {
  if (chromosome.size() != vocab.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "chromosome length " + std::to_string(chromosome.size()) +
                    " != vocabulary size " + std::to_string(vocab.size()));
  }
}

/// Mean token weight; tokens missing from the vocabulary weigh 0.
inline double sentence_weight(const Sentence& sentence, const Chromosome& chromosome,
                              const Vocabulary& vocab) {
  check_dimensions(chromosome, vocab);
  if (sentence.tokens.empty()) {
    throw Error(ErrorCode::kEmptySentence, "sentence " + std::to_string(sentence.source_index));
  }
  double sum = 0.0;
  for (const auto& token : sentence.tokens) {
    if (auto id = vocab.lookup(token)) sum += chromosome.weights[*id];
  }
  return sum / static_cast<double>(sentence.tokens.size());
}

/// Selects, in article order, every sentence whose weight is strictly
/// greater than `threshold`.
inline Summary summarize(const Document& document, const Chromosome& chromosome,
                         const Vocabulary& vocab, double threshold) {
  check_dimensions(chromosome, vocab);
  Summary summary;
  for (const auto& sentence : document.sentences) {
    if (sentence_weight(sentence, chromosome, vocab) > threshold) {
      summary.selected.push_back(sentence.source_index);
      summary.tokens.insert(summary.tokens.end(), sentence.tokens.begin(), sentence.tokens.end());
    }
  }
  return summary;
}

}  // namespace evosum
