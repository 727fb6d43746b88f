#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evosum/corpus.hpp"
#include "evosum/error.hpp"

namespace evosum {

using TokenId = std::size_t;

/// Dense token <-> id bijection. Ids follow first-occurrence order, so
/// appending documents never renumbers existing tokens.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Throws kMalformedFile on duplicate or empty entries.
  explicit Vocabulary(std::vector<Token> entries) {
    index_.reserve(entries.size());
    for (auto& token : entries) {
      if (token.empty()) throw Error(ErrorCode::kMalformedFile, "empty vocabulary entry");
      if (!add(std::move(token))) {
        throw Error(ErrorCode::kMalformedFile, "duplicate vocabulary entry '" + token + "'");
      }
    }
  }

  /// Returns false if `token` was already present.
  bool add(Token token) {
    auto [it, inserted] = index_.try_emplace(token, entries_.size());
    if (inserted) entries_.push_back(std::move(token));
    return inserted;
  }

  std::optional<TokenId> lookup(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Token& token(TokenId id) const { return entries_.at(id); }
  std::span<const Token> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.entries_ == b.entries_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::vector<Token> entries_;
  std::unordered_map<Token, TokenId, Hash, std::equal_to<>> index_;
};

struct VocabularyOptions {
  bool include_references = true;
};

inline Vocabulary build_vocabulary(std::span<const Document> documents,
                                   VocabularyOptions options = {}) {
  Vocabulary vocab;
  for (const auto& doc : documents) {
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence.tokens) vocab.add(token);
    }
    if (options.include_references) {
      for (const auto& token : doc.reference) vocab.add(token);
    }
  }
  return vocab;
}

inline std::optional<TokenId> lookup(const Vocabulary& vocab, std::string_view token) {
  return vocab.lookup(token);
}

}  // namespace evosum
