#pragma once

// Story ingestion. A story file holds article lines, then one or more blocks
// introduced by a line reading exactly "@highlight" (after trimming). Each
// non-blank article line is one sentence; all highlight lines are tokenized
// and concatenated, in file order, into the reference summary.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "evosum/error.hpp"
#include "evosum/tokenize.hpp"

namespace evosum {

struct Sentence {
  std::vector<Token> tokens;
  /// 0-based position among the article's sentences.
  std::size_t source_index = 0;
  /// The trimmed source line, kept for display.
  std::string text;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  std::vector<Token> reference;

  friend bool operator==(const Document&, const Document&) = default;
};

inline constexpr std::string_view kHighlightMarker = "@highlight";

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename Fn>
void for_each_line(std::string_view raw, Fn&& fn) {
  while (!raw.empty()) {
    const auto nl = raw.find('\n');
    if (nl == std::string_view::npos) {
      fn(raw);
      return;
    }
    fn(raw.substr(0, nl));
    raw.remove_prefix(nl + 1);
  }
}

}  // namespace detail

/// Article sentences of a raw story, stopping at the first highlight marker.
/// Lines that tokenize to nothing are skipped, so every sentence is non-empty.
inline std::vector<Sentence> parse_sentences(std::string_view raw) {
  std::vector<Sentence> sentences;
  bool done = false;
  detail::for_each_line(raw, [&](std::string_view line) {
    if (done) return;
    line = detail::trim(line);
    if (line == kHighlightMarker) {
      done = true;
      return;
    }
    if (line.empty()) return;
    auto tokens = tokenize(line);
    if (tokens.empty()) return;
    sentences.push_back(Sentence{std::move(tokens), sentences.size(), std::string(line)});
  });
  return sentences;
}

inline Document parse_story(std::string_view raw, std::string id) {
  Document doc;
  doc.id = std::move(id);
  doc.sentences = parse_sentences(raw);

  bool in_highlights = false;
  detail::for_each_line(raw, [&](std::string_view line) {
    line = detail::trim(line);
    if (line == kHighlightMarker) {
      in_highlights = true;
      return;
    }
    if (!in_highlights || line.empty()) return;
    auto tokens = tokenize(line);
    doc.reference.insert(doc.reference.end(), std::make_move_iterator(tokens.begin()),
                         std::make_move_iterator(tokens.end()));
  });

  if (doc.reference.empty()) {
    throw Error(ErrorCode::kEmptyReference, "no highlight content in '" + doc.id + "'");
  }
  if (doc.sentences.empty()) {
    throw Error(ErrorCode::kEmptyArticle, "no article lines in '" + doc.id + "'");
  }
  return doc;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "cannot read '" + path.string() + "'");
  return std::move(ss).str();
}

using WarningSink = std::function<void(const std::string&)>;

inline void warn_to_stderr(const std::string& message) {
  std::cerr << "warning: " << message << '\n';
}

struct CorpusOptions {
  /// Maximum number of documents returned; unset means all.
  std::optional<std::size_t> limit;
  /// Number of valid documents to skip first (used for train/test offsets).
  std::size_t skip = 0;
  WarningSink warn = warn_to_stderr;
};

/// Regular files of `directory` sorted by filename bytes.
inline std::vector<std::filesystem::path> list_story_files(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw Error(ErrorCode::kIoFailure, "not a readable directory: '" + directory.string() + "'");
  }
  std::vector<fs::path> files;
  fs::directory_iterator it(directory, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure, "cannot list '" + directory.string() + "': " + ec.message());
  }
  for (const auto& entry : it) {
    if (entry.is_regular_file(ec)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

/// Loads stories in lexicographic filename order. Files that fail to read or
/// parse are reported through `options.warn` and do not count toward limits.
inline std::vector<Document> load_corpus(const std::filesystem::path& directory,
                                         const CorpusOptions& options) {
  std::vector<Document> docs;
  std::size_t skipped = 0;
  for (const auto& path : list_story_files(directory)) {
    if (options.limit && docs.size() >= *options.limit) break;
    try {
      Document doc = parse_story(read_file(path), path.stem().string());
      if (skipped < options.skip) {
        ++skipped;
        continue;
      }
      docs.push_back(std::move(doc));
    } catch (const Error& e) {
      if (options.warn) options.warn("skipping '" + path.string() + "': " + e.what());
    }
  }
  return docs;
}

inline std::vector<Document> load_corpus(const std::filesystem::path& directory,
                                         std::optional<std::size_t> limit = std::nullopt) {
  CorpusOptions options;
  options.limit = limit;
  return load_corpus(directory, options);
}

}  // namespace evosum
