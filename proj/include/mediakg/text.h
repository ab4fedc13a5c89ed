#ifndef MEDIAKG_TEXT_H_
#define MEDIAKG_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mediakg {

// A word token with byte offsets into the text it was cut from.
struct Token {
  std::string_view text;
  size_t begin = 0;
  size_t end = 0;
};

// Splits text into word tokens. A word is a run of ASCII alphanumerics or
// non-ASCII bytes; '.', '\'' and '-' are kept when they sit between two word
// characters ("U.S", "don't", "Jean-Luc"). A trailing possessive "'s" is
// split off as its own token. All other punctuation and whitespace separate
// tokens and is dropped.
std::vector<Token> TokenizeWords(std::string_view text);

// Lowercased word tokens, as consumed by the sentiment scorer.
std::vector<std::string> LowercaseTokens(std::string_view text);

std::string AsciiLower(std::string_view text);

// Lowercases, removes possessive suffixes, apostrophes and periods, turns
// other ASCII punctuation into spaces and collapses whitespace.
// "U.S. President Trump's" -> "us president trump".
std::string NormalizeSurface(std::string_view surface);

// Splits a normalized surface on single spaces.
std::vector<std::string_view> SplitTokens(std::string_view normalized);

// True when `needle` occurs in `haystack` as a contiguous run of whole
// tokens. Both arguments must be normalized. An empty needle never matches.
bool ContainsTokenRun(std::string_view haystack, std::string_view needle);

// English function words plus weekday and month names; none of these are
// treated as entity tokens.
bool IsStopword(std::string_view lowercase_word);

// True if every token of a normalized surface is a stopword.
bool IsStopwordSurface(std::string_view normalized);

// Number of Unicode code points in a UTF-8 string (continuation bytes are
// not counted).
size_t CodePointCount(std::string_view utf8);

// Code-point offset of byte offset `byte_offset` within `utf8`.
size_t CodePointOffset(std::string_view utf8, size_t byte_offset);

bool IsAsciiUpper(char c);
bool IsSpace(char c);

}  // namespace mediakg

#endif  // MEDIAKG_TEXT_H_
