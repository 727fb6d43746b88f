#pragma once

// ROUGE-1 over pre-tokenized sequences using clipped unigram counts.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>

#include "evosum/error.hpp"

namespace evosum {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const RougeScore&, const RougeScore&) = default;
};

template <typename T, typename Hash = std::hash<T>>
using UnigramCounts = std::unordered_map<T, std::size_t, Hash>;

template <typename T, typename Hash = std::hash<T>>
UnigramCounts<T, Hash> unigram_counts(std::span<const T> tokens) {
  UnigramCounts<T, Hash> counts;
  for (const auto& t : tokens) ++counts[t];
  return counts;
}

/// Sum over tokens of min(count in a, count in b).
template <typename T, typename Hash>
std::size_t clipped_overlap(const UnigramCounts<T, Hash>& a, const UnigramCounts<T, Hash>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t overlap = 0;
  for (const auto& [token, count] : small) {
    auto it = large.find(token);
    if (it != large.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

/// Score from raw counts. An empty candidate scores (0, 0, 0).
inline RougeScore rouge_from_overlap(std::size_t overlap, std::size_t candidate_len,
                                     std::size_t reference_len) {
  if (reference_len == 0) throw Error(ErrorCode::kEmptyReference, "ROUGE reference is empty");
  if (candidate_len == 0 || overlap == 0) return {};
  RougeScore s;
  s.precision = static_cast<double>(overlap) / static_cast<double>(candidate_len);
  s.recall = static_cast<double>(overlap) / static_cast<double>(reference_len);
  s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

template <typename T, typename Hash = std::hash<T>>
RougeScore rouge1(std::span<const T> candidate, std::span<const T> reference) {
  if (reference.empty()) throw Error(ErrorCode::kEmptyReference, "ROUGE reference is empty");
  const auto overlap = clipped_overlap(unigram_counts<T, Hash>(candidate),
                                       unigram_counts<T, Hash>(reference));
  return rouge_from_overlap(overlap, candidate.size(), reference.size());
}

template <typename Range>
RougeScore rouge1(const Range& candidate, const Range& reference) {
  using T = typename Range::value_type;
  return rouge1<T>(std::span<const T>(candidate), std::span<const T>(reference));
}

/// Mean of the three sub-metrics; the per-document fitness contribution.
inline double rouge_mean(const RougeScore& s) { return (s.precision + s.recall + s.f1) / 3.0; }

}  // namespace evosum
