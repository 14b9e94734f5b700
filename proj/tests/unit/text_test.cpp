#include "wordvec/text.hpp"

#include <gtest/gtest.h>

#include "wordvec/error.hpp"

namespace wordvec {
namespace {

using Tokens = std::vector<std::string>;

TEST(DecodeUtf8, ReportsCodePointsWithOffsets) {
  const auto cps = decode_utf8("ać€😀");
  ASSERT_EQ(cps.size(), 4u);
  EXPECT_EQ(cps[0].value, U'a');
  EXPECT_EQ(cps[1].value, U'ć');
  EXPECT_EQ(cps[1].offset, 1u);
  EXPECT_EQ(cps[1].length, 2u);
  EXPECT_EQ(cps[2].length, 3u);
  EXPECT_EQ(cps[3].value, U'😀');
  EXPECT_EQ(cps[3].offset, 6u);
  EXPECT_EQ(cps[3].length, 4u);
}

TEST(DecodeUtf8, RejectsMalformedInputWithOffset) {
  try {
    decode_utf8("ab\xC3");
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(validate_utf8("\xFF"), DecodeError);
  EXPECT_THROW(validate_utf8("\xC0\xAF"), DecodeError);  // overlong
  EXPECT_THROW(validate_utf8("\xED\xA0\x80"), DecodeError);  // surrogate
  EXPECT_NO_THROW(validate_utf8("žščćđ"));
}

TEST(Classes, AlphanumericAndWhitespace) {
  EXPECT_TRUE(is_alphanumeric(U'a'));
  EXPECT_TRUE(is_alphanumeric(U'Ž'));
  EXPECT_TRUE(is_alphanumeric(U'7'));
  EXPECT_TRUE(is_alphanumeric(U'ж'));
  EXPECT_FALSE(is_alphanumeric(U'.'));
  EXPECT_FALSE(is_alphanumeric(U'—'));
  EXPECT_TRUE(is_whitespace(U' '));
  EXPECT_TRUE(is_whitespace(U'\t'));
  EXPECT_TRUE(is_whitespace(U' '));
  EXPECT_TRUE(is_whitespace(U'　'));
  EXPECT_FALSE(is_whitespace(U'x'));
}

TEST(Tokenize, SplitsOnUnicodeWhitespaceAndStripsPunctuation) {
  EXPECT_EQ(tokenize_line("Hello, world!  (again)"), (Tokens{"Hello", "world", "again"}));
  EXPECT_EQ(tokenize_line("a b　c"), (Tokens{"a", "b", "c"}));
  EXPECT_EQ(tokenize_line("Kuća je \"velika\"."), (Tokens{"Kuća", "je", "velika"}));
}

TEST(Tokenize, DropsPurePunctuationAndKeepsInnerMarks) {
  EXPECT_EQ(tokenize_line("-- ... !!! word"), (Tokens{"word"}));
  EXPECT_EQ(tokenize_line("don't e-mail 3.14"), (Tokens{"don't", "e-mail", "3.14"}));
  EXPECT_TRUE(tokenize_line("").empty());
  EXPECT_TRUE(tokenize_line("   \t ").empty());
}

TEST(Tokenize, InvalidUtf8Throws) { EXPECT_THROW(tokenize_line("ok \xFE bad"), DecodeError); }

TEST(FoldCase, FoldsPerCodePoint) {
  EXPECT_EQ(fold_case("Zagreb"), "zagreb");
  EXPECT_EQ(fold_case("ŽUPA"), "župa");
  EXPECT_EQ(fold_case("ΣΟΦΙΑ"), fold_case("σοφια"));
}

TEST(EditDistance, CountsCodePoints) {
  EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(edit_distance("kuća", "kuca"), 1u);
  EXPECT_EQ(edit_distance("", "abc"), 3u);
  EXPECT_EQ(edit_distance("same", "same"), 0u);
}

TEST(Split, KeepsEmptyFieldsAndBlankRuns) {
  const auto f = split("a\t\tb", '\t');
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1], "");
  const auto g = split_blanks("  a \t b  ");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], "a");
  EXPECT_EQ(g[1], "b");
  EXPECT_EQ(trim(" \t x y \r\n"), "x y");
}

}  // namespace
}  // namespace wordvec
