#pragma once

// Rule-based word tokenizer.
//
//   1. NFC-normalize the line, lowercase it (full Unicode case mapping, root
//      locale), NFC-normalize again.
//   2. Split on Unicode White_Space.
//   3. For each chunk, every character of the maximal leading and trailing
//      run of non-word characters becomes its own token. A word character is
//      any letter, mark or number (general categories L*, M*, N*). An
//      apostrophe directly followed by a letter is not stripped from the
//      front, so clitics such as "'t" survive re-tokenization.
//   4. The remaining core is broken before every internal apostrophe that is
//      followed by a letter ("don't" -> "don" "'t"); each piece is tokenized
//      again with rule 3.
//
// Apostrophe means U+0027 or U+2019. The output is a fixed point:
// tokenize(join(tokenize(s), " ")) == tokenize(s).

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>
#include <unicode/utf8.h>

#include "evosum/error.hpp"

namespace evosum {

/// Lowercase, whitespace-free, non-empty UTF-8 string.
using Token = std::string;

namespace detail {

inline bool is_word_char(UChar32 c) {
  return (U_GET_GC_MASK(c) & (U_GC_L_MASK | U_GC_M_MASK | U_GC_N_MASK)) != 0;
}

inline bool is_letter(UChar32 c) { return (U_GET_GC_MASK(c) & U_GC_L_MASK) != 0; }

inline bool is_apostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }

inline bool starts_clitic(std::span<const UChar32> cps, std::size_t i) {
  return is_apostrophe(cps[i]) && i + 1 < cps.size() && is_letter(cps[i + 1]);
}

inline std::string encode_utf8(std::span<const UChar32> cps) {
  std::string out;
  out.reserve(cps.size());
  for (UChar32 c : cps) {
    char buf[U8_MAX_LENGTH];
    int32_t len = 0;
    U8_APPEND_UNSAFE(buf, len, c);
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

inline void tokenize_chunk(std::span<const UChar32> chunk, std::vector<Token>& out) {
  const std::size_t n = chunk.size();
  std::size_t begin = 0;
  while (begin < n && !is_word_char(chunk[begin]) && !starts_clitic(chunk, begin)) {
    out.push_back(encode_utf8(chunk.subspan(begin, 1)));
    ++begin;
  }
  std::size_t end = n;
  while (end > begin && !is_word_char(chunk[end - 1])) --end;

  if (begin < end) {
    auto core = chunk.subspan(begin, end - begin);
    std::size_t piece_start = 0;
    bool split = false;
    for (std::size_t i = 1; i < core.size(); ++i) {
      if (starts_clitic(core, i)) {
        tokenize_chunk(core.subspan(piece_start, i - piece_start), out);
        piece_start = i;
        split = true;
      }
    }
    if (split) {
      tokenize_chunk(core.subspan(piece_start), out);
    } else {
      out.push_back(encode_utf8(core));
    }
  }

  for (std::size_t i = end; i < n; ++i) out.push_back(encode_utf8(chunk.subspan(i, 1)));
}

}  // namespace detail

/// NFC + full lowercase, returned as UTF-16. Invalid UTF-8 becomes U+FFFD.
inline icu::UnicodeString normalize_lower(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kIoFailure, std::string("ICU NFC unavailable: ") + u_errorName(status));
  }
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s = nfc->normalize(s, status);
  s.toLower(icu::Locale::getRoot());
  s = nfc->normalize(s, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kIoFailure, std::string("normalization failed: ") + u_errorName(status));
  }
  return s;
}

/// Lowercase form used by the tokenizer, as UTF-8.
inline std::string lowercase(std::string_view text) {
  std::string out;
  normalize_lower(text).toUTF8String(out);
  return out;
}

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  if (line.empty()) return tokens;

  const icu::UnicodeString s = normalize_lower(line);
  std::vector<UChar32> cps;
  cps.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    cps.push_back(c);
    i += U16_LENGTH(c);
  }

  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && u_isUWhiteSpace(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !u_isUWhiteSpace(cps[j])) ++j;
    if (j > i) detail::tokenize_chunk(std::span<const UChar32>(cps).subspan(i, j - i), tokens);
    i = j;
  }
  return tokens;
}

}  // namespace evosum
