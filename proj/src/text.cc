#include "mediakg/text.h"

#include <algorithm>
#include <set>

namespace mediakg {
namespace {

const std::set<std::string_view>& Stopwords() {
  static const std::set<std::string_view> kStopwords = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am",
    "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "could", "did",
    "do", "does", "doing", "down", "during", "each", "even", "ever", "every",
    "few", "for", "from", "further", "had", "has", "have", "having", "he",
    "her", "here", "hers", "herself", "him", "himself", "his", "how",
    "however", "i", "if", "in", "into", "is", "it", "its", "itself", "just",
    "last", "least", "less", "let", "like", "many", "may", "me", "meanwhile",
    "might", "more", "most", "much", "must", "my", "myself", "next", "no",
    "nor", "not", "now", "of", "off", "on", "once", "one", "only", "or",
    "other", "our", "ours", "ourselves", "out", "over", "own", "per",
    "perhaps", "same", "several", "she", "should", "since", "so", "some",
    "still", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those",
    "though", "through", "thus", "to", "today", "tomorrow", "too", "under",
    "until", "up", "upon", "very", "via", "was", "we", "well", "were",
    "what", "when", "where", "whether", "which", "while", "who", "whom",
    "whose", "why", "will", "with", "within", "without", "would", "yes",
    "yesterday", "yet", "you", "your", "yours", "yourself", "yourselves",
    // Calendar words are capitalized but are not entities.
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday",
    "sunday", "january", "february", "march", "april", "june", "july",
    "august", "september", "october", "november", "december", "mr", "mrs",
    "ms", "dr", "according", "although", "another", "around"};
  return kStopwords;
}

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

bool IsJoiner(char c) { return c == '.' || c == '\'' || c == '-'; }

bool IsAsciiPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && !IsWordByte(c) && !IsSpace(c);
}

bool EndsWithPossessive(std::string_view word) {
  if (word.size() < 3) return false;
  const char s = word.back();
  return word[word.size() - 2] == '\'' && (s == 's' || s == 'S');
}

}  // namespace

bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::vector<Token> TokenizeWords(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    if (!IsWordByte(text[i])) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < n) {
      if (IsWordByte(text[j])) {
        ++j;
        continue;
      }
      // Up to two joiners in a row stay inside the word ("U.S.-led").
      size_t k = j;
      while (k < n && k - j < 2 && IsJoiner(text[k])) ++k;
      if (k == j || k == n || !IsWordByte(text[k])) break;
      j = k + 1;
    }
    std::string_view word = text.substr(i, j - i);
    if (EndsWithPossessive(word)) {
      tokens.push_back({word.substr(0, word.size() - 2), i, j - 2});
      tokens.push_back({word.substr(word.size() - 2), j - 2, j});
    } else {
      tokens.push_back({word, i, j});
    }
    i = j;
  }
  return tokens;
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (IsAsciiUpper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> LowercaseTokens(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& t : TokenizeWords(text)) out.push_back(AsciiLower(t.text));
  return out;
}

std::string NormalizeSurface(std::string_view surface) {
  std::string lowered = AsciiLower(surface);
  std::string out;
  out.reserve(lowered.size());
  bool pending_space = false;
  for (size_t i = 0; i < lowered.size(); ++i) {
    const char c = lowered[i];
    if (c == '\'' && i + 1 < lowered.size() && lowered[i + 1] == 's' &&
        (i + 2 == lowered.size() || !IsWordByte(lowered[i + 2]))) {
      ++i;  // drop possessive "'s"
      continue;
    }
    if (c == '\'' || c == '.') continue;
    if (IsSpace(c) || IsAsciiPunct(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string_view> SplitTokens(std::string_view normalized) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (start < normalized.size()) {
    size_t space = normalized.find(' ', start);
    if (space == std::string_view::npos) space = normalized.size();
    if (space > start) out.push_back(normalized.substr(start, space - start));
    start = space + 1;
  }
  return out;
}

bool ContainsTokenRun(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    const bool left_ok = pos == 0 || haystack[pos - 1] == ' ';
    const size_t after = pos + needle.size();
    const bool right_ok = after == haystack.size() || haystack[after] == ' ';
    if (left_ok && right_ok) return true;
    pos = haystack.find(needle, pos + 1);
  }
  return false;
}

bool IsStopword(std::string_view lowercase_word) {
  return Stopwords().contains(lowercase_word);
}

bool IsStopwordSurface(std::string_view normalized) {
  const auto tokens = SplitTokens(normalized);
  if (tokens.empty()) return true;
  return std::all_of(tokens.begin(), tokens.end(),
                     [](std::string_view t) { return IsStopword(t); });
}

size_t CodePointCount(std::string_view utf8) {
  size_t count = 0;
  for (char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

size_t CodePointOffset(std::string_view utf8, size_t byte_offset) {
  return CodePointCount(utf8.substr(0, std::min(byte_offset, utf8.size())));
}

}  // namespace mediakg
