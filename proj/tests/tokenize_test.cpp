#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "evosum/random.hpp"
#include "evosum/tokenize.hpp"

namespace evosum {
namespace {

using Tokens = std::vector<Token>;

std::string join(const Tokens& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// Mix of ASCII, punctuation, apostrophes, exotic whitespace, decomposed and
// cased scripts.
std::string random_line(Rng& rng) {
  static const std::vector<std::string> pool = {
      "a", "B", "z", "Q", "0", "7", ".", ",", "!", "?", "\"", "(", ")", "-", "$", "%",
      "'", "\u2019", " ", " ", " ", "\t", "\u00A0", "\u3000", "\u00C9", "e\u0301", "\u0301",
      "\u03A3", "\u03C3", "\u00DF", "\u0130", "\u4E2D", "\U0001F600", "\u00BD", "x", "T"};
  std::string s;
  const auto len = rng.uniform_index(24);
  for (std::size_t i = 0; i < len; ++i) s += pool[rng.uniform_index(pool.size())];
  return s;
}

TEST(Tokenize, LowercasesAndDetachesTerminalPunctuation) {
  EXPECT_EQ(tokenize("The cat sat."), (Tokens{"the", "cat", "sat", "."}));
}

TEST(Tokenize, EmptyInput) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize(" \t  ").empty());
}

TEST(Tokenize, ApostropheClitics) {
  EXPECT_EQ(tokenize("Don't stop, now!"), (Tokens{"don", "'t", "stop", ",", "now", "!"}));
  EXPECT_EQ(tokenize("they\u2019re"), (Tokens{"they", "\u2019re"}));
  EXPECT_EQ(tokenize("rock'n'roll"), (Tokens{"rock", "'n", "'roll"}));
  EXPECT_EQ(tokenize("'tis"), (Tokens{"'tis"}));
  EXPECT_EQ(tokenize("players'"), (Tokens{"players", "'"}));
}

TEST(Tokenize, EdgeRunsBecomeSingleCharacters) {
  EXPECT_EQ(tokenize("\"(Wow)...\""), (Tokens{"\"", "(", "wow", ")", ".", ".", ".", "\""}));
  EXPECT_EQ(tokenize("--"), (Tokens{"-", "-"}));
  EXPECT_EQ(tokenize("$3.5 12%"), (Tokens{"$", "3.5", "12", "%"}));
  EXPECT_EQ(tokenize("U.S."), (Tokens{"u.s", "."}));
  EXPECT_EQ(tokenize("(CNN) -- A"), (Tokens{"(", "cnn", ")", "-", "-", "a"}));
}

TEST(Tokenize, InternalPunctuationStays) {
  EXPECT_EQ(tokenize("e-mail 40,000"), (Tokens{"e-mail", "40,000"}));
}

TEST(Tokenize, DoubledApostropheSplitsCleanly) {
  EXPECT_EQ(tokenize("a''b"), (Tokens{"a", "'", "'b"}));
}

TEST(Tokenize, NormalizesToNfc) {
  EXPECT_EQ(tokenize("Cafe\u0301"), (Tokens{"caf\u00E9"}));
  EXPECT_EQ(tokenize("CAF\u00C9"), (Tokens{"caf\u00E9"}));
}

TEST(Tokenize, UnicodeWhitespaceSplits) {
  EXPECT_EQ(tokenize("a\u00A0b\u3000c\td"), (Tokens{"a", "b", "c", "d"}));
}

TEST(Tokenize, InvalidUtf8IsReplaced) {
  const auto tokens = tokenize(std::string("ab\xff"));
  EXPECT_EQ(tokens, (Tokens{"ab", "\uFFFD"}));
}

TEST(TokenizeProperty, OutputTokensAreValid) {
  Rng rng(1);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto line = random_line(rng);
    for (const auto& t : tokenize(line)) {
      ASSERT_FALSE(t.empty()) << line;
      ASSERT_EQ(t.find_first_of(" \t\n\r"), std::string::npos) << line;
      ASSERT_EQ(tokenize(t).size(), 1u) << "token '" << t << "' from '" << line << "'";
      ASSERT_EQ(lowercase(t), t) << line;
    }
  }
}

TEST(TokenizeProperty, IdempotentOnJoinedOutput) {
  Rng rng(2);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto line = random_line(rng);
    const auto once = tokenize(line);
    ASSERT_EQ(tokenize(join(once)), once) << line;
  }
}

TEST(TokenizeProperty, InvariantUnderLowercasing) {
  Rng rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto line = random_line(rng);
    ASSERT_EQ(tokenize(lowercase(line)), tokenize(line)) << line;
  }
}

TEST(TokenizeProperty, Deterministic) {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const auto line = random_line(rng);
    ASSERT_EQ(tokenize(line), tokenize(line));
  }
}

}  // namespace
}  // namespace evosum
