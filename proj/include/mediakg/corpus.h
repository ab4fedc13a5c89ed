#ifndef MEDIAKG_CORPUS_H_
#define MEDIAKG_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mediakg {

struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  friend bool operator==(const Date&, const Date&) = default;
};

// Accepts "YYYY", "YYYY-MM", "YYYY-MM-DD" and full ISO-8601 timestamps (the
// time part is ignored). Missing month/day default to 1. Returns nullopt on
// anything else.
std::optional<Date> ParseIsoDate(std::string_view text);
std::string FormatIsoDate(const Date& date);

struct Article {
  std::string id;
  std::string source_label;
  std::optional<Date> published;
  std::string title;
  std::string body;

  friend bool operator==(const Article&, const Article&) = default;
};

struct Corpus {
  std::string source_label;
  std::vector<Article> articles;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct LoadCorpusOptions {
  // When set, every record's `source` must equal this label; records without
  // a `source` key inherit it.
  std::optional<std::string> source_label;
};

// Reads the line-delimited article format: one JSON object per line with
// keys id, source, date (optional), title, body. Blank lines are skipped;
// lines starting with # are comments, and a # {"source": ...} header gives
// the label of a file that may have no records.
// Throws InputError naming the offending line on malformed records,
// duplicate ids and mixed source labels.
Corpus ReadCorpus(std::istream& in, std::string_view name,
                  const LoadCorpusOptions& options = {});
Corpus LoadCorpus(const std::filesystem::path& path,
                  const LoadCorpusOptions& options = {});

void WriteCorpus(const Corpus& corpus, std::ostream& out);

// Byte range [begin, end) of one sentence inside the text it came from.
struct SentenceSpan {
  size_t begin = 0;
  size_t end = 0;

  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

// Rule-based splitter: a sentence ends at '.', '!' or '?' (plus any closing
// quotes or brackets) when followed by whitespace and an uppercase letter,
// unless the token ending in '.' is a known abbreviation ("Mr.", "U.S.").
// Spans are trimmed of surrounding whitespace and cover every non-space
// character of `body`.
std::vector<SentenceSpan> SplitSentences(std::string_view body);

// Sentence texts of an article in annotation order. With `include_title`,
// a non-blank title is sentence 0 and the body follows.
std::vector<std::string> ArticleSentences(const Article& article,
                                          bool include_title);

}  // namespace mediakg

#endif  // MEDIAKG_CORPUS_H_
