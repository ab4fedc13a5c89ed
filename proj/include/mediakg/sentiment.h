#ifndef MEDIAKG_SENTIMENT_H_
#define MEDIAKG_SENTIMENT_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace mediakg {

struct LexiconEntry {
  double polarity = 0.0;      // [-1, 1]
  double subjectivity = 0.0;  // [0, 1]
  double intensity = 1.0;     // > 0; != 1 amplifies the following word
};

// Word-level polarity/subjectivity lexicon with a negator set.
//
// Text format, one item per line:
//   word<TAB>polarity<TAB>subjectivity<TAB>intensity   (intensity optional)
//   !word                                              (negator)
//   # comment
class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  static SentimentLexicon Parse(std::istream& in, std::string_view name);
  static SentimentLexicon Load(const std::filesystem::path& path);
  // The lexicon compiled into the library.
  static const SentimentLexicon& Default();

  // Both throw InputError when a value is out of range or when the word is
  // already an entry/negator of the other kind.
  void AddEntry(std::string word, const LexiconEntry& entry);
  void AddNegator(std::string word);

  const LexiconEntry* Find(std::string_view word) const;
  bool IsNegator(std::string_view word) const;

  // Same lexicon with every polarity negated.
  SentimentLexicon Mirrored() const;

  const std::map<std::string, LexiconEntry, std::less<>>& entries() const {
    return entries_;
  }
  const std::set<std::string, std::less<>>& negators() const {
    return negators_;
  }

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
  std::set<std::string, std::less<>> negators_;
};

struct SentimentScore {
  double polarity = 0.0;
  double subjectivity = 0.0;

  friend bool operator==(const SentimentScore&, const SentimentScore&) = default;
};

// Scores a lowercased token sequence. Every token found in the lexicon
// contributes (p, s). A negator among the three preceding tokens turns p into
// -0.5 * p; a preceding lexicon word with intensity != 1 multiplies p by that
// intensity (clamped to [-1, 1]). The sentence score is the mean of the
// contributions, or (0, 0) when nothing matched.
SentimentScore ScoreSentence(std::span<const std::string> tokens,
                             const SentimentLexicon& lexicon);

}  // namespace mediakg

#endif  // MEDIAKG_SENTIMENT_H_
