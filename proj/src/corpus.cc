#include "mediakg/corpus.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "mediakg/errors.h"
#include "mediakg/text.h"

namespace mediakg {
namespace {

using nlohmann::json;

const std::set<std::string_view>& Abbreviations() {
  static const std::set<std::string_view> kAbbreviations = {
      "Mr.",   "Mrs.",  "Ms.",   "Dr.",   "Prof.", "Sr.",   "Jr.",
      "St.",   "Gen.",  "Sen.",  "Rep.",  "Gov.",  "Lt.",   "Col.",
      "Sgt.",  "Capt.", "Adm.",  "Maj.",  "Rev.",  "Hon.",  "Pres.",
      "U.S.",  "U.K.",  "U.N.",  "E.U.",  "D.C.",  "No.",   "Nos.",
      "vs.",   "etc.",  "e.g.",  "i.e.",  "Jan.",  "Feb.",  "Mar.",
      "Apr.",  "Jun.",  "Jul.",  "Aug.",  "Sep.",  "Sept.", "Oct.",
      "Nov.",  "Dec.",  "Ft.",   "Mt.",   "a.m.",  "p.m.",  "approx."};
  return kAbbreviations;
}

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsCloser(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

// The whitespace-delimited word ending at `dot` (inclusive), with leading
// quotes and brackets removed.
std::string_view WordEndingAt(std::string_view text, size_t dot) {
  size_t start = dot;
  while (start > 0 && !IsSpace(text[start - 1])) --start;
  while (start < dot && (text[start] == '"' || text[start] == '(' ||
                         text[start] == '[' || text[start] == '\'')) {
    ++start;
  }
  return text.substr(start, dot - start + 1);
}

bool IsAbbreviation(std::string_view word) {
  if (Abbreviations().contains(word)) return true;
  // Initials such as the "F." in "John F. Kennedy".
  return word.size() == 2 && IsAsciiUpper(word[0]);
}

std::string RequireString(const json& record, const char* key, size_t line,
                          std::string_view name, bool required) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) {
    if (required) {
      throw InputError(std::string(name) + ":" + std::to_string(line) +
                       ": missing required field '" + key + "'");
    }
    return {};
  }
  if (!it->is_string()) {
    throw InputError(std::string(name) + ":" + std::to_string(line) +
                     ": field '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

bool IsBlank(std::string_view text) {
  for (char c : text) {
    if (!IsSpace(c)) return false;
  }
  return true;
}

}  // namespace

std::optional<Date> ParseIsoDate(std::string_view text) {
  auto parse_int = [](std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  Date date;
  if (text.size() < 4 || !parse_int(text.substr(0, 4), date.year)) {
    return std::nullopt;
  }
  if (text.size() == 4) return date;
  if (text[4] != '-' || text.size() < 7 ||
      !parse_int(text.substr(5, 2), date.month)) {
    return std::nullopt;
  }
  if (text.size() > 7) {
    if (text[7] != '-' || text.size() < 10 ||
        !parse_int(text.substr(8, 2), date.day)) {
      return std::nullopt;
    }
    if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') {
      return std::nullopt;
    }
  }
  if (date.month < 1 || date.month > 12 || date.day < 1 || date.day > 31) {
    return std::nullopt;
  }
  return date;
}

std::string FormatIsoDate(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", date.year, date.month,
                date.day);
  return buf;
}

Corpus ReadCorpus(std::istream& in, std::string_view name,
                  const LoadCorpusOptions& options) {
  Corpus corpus;
  if (options.source_label) corpus.source_label = *options.source_label;
  bool have_label = options.source_label.has_value();
  std::unordered_set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) continue;
    const std::string where = std::string(name) + ":" + std::to_string(line_no);
    if (line.front() == '#') {
      // Optional header: # {"source": "..."} names the source of an empty file.
      json header = json::parse(std::string_view(line).substr(1), nullptr,
                                /*allow_exceptions=*/false);
      if (header.is_object() && header.contains("source") &&
          header["source"].is_string()) {
        const std::string label = header["source"];
        if (have_label && label != corpus.source_label) {
          throw InputError(where + ": header source '" + label +
                           "' does not match '" + corpus.source_label + "'");
        }
        corpus.source_label = label;
        have_label = true;
      }
      continue;
    }
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where + ": malformed JSON record: " + e.what());
    }
    if (!record.is_object()) {
      throw InputError(where + ": record must be a JSON object");
    }
    Article article;
    article.id = RequireString(record, "id", line_no, name, true);
    article.source_label = RequireString(record, "source", line_no, name, false);
    article.title = RequireString(record, "title", line_no, name, false);
    article.body = RequireString(record, "body", line_no, name, true);
    const std::string date = RequireString(record, "date", line_no, name, false);
    if (!date.empty()) {
      article.published = ParseIsoDate(date);
      if (!article.published) {
        throw InputError(where + ": invalid ISO-8601 date '" + date + "'");
      }
    }
    if (article.id.empty()) throw InputError(where + ": empty article id");
    if (IsBlank(article.body)) {
      throw InputError(where + ": article '" + article.id + "' has a blank body");
    }
    if (article.source_label.empty()) {
      if (!have_label) {
        throw InputError(where + ": missing 'source' and no --source-label given");
      }
      article.source_label = corpus.source_label;
    }
    if (!have_label) {
      corpus.source_label = article.source_label;
      have_label = true;
    } else if (article.source_label != corpus.source_label) {
      throw InputError(where + ": source '" + article.source_label +
                       "' does not match corpus source '" +
                       corpus.source_label + "'");
    }
    if (!ids.insert(article.id).second) {
      throw InputError(where + ": duplicate article id '" + article.id + "'");
    }
    corpus.articles.push_back(std::move(article));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path,
                  const LoadCorpusOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  return ReadCorpus(in, path.string(), options);
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  if (!corpus.source_label.empty()) {
    out << "# " << nlohmann::ordered_json{{"source", corpus.source_label}}.dump()
        << '\n';
  }
  for (const Article& a : corpus.articles) {
    nlohmann::ordered_json record;
    record["id"] = a.id;
    record["source"] = a.source_label;
    if (a.published) record["date"] = FormatIsoDate(*a.published);
    record["title"] = a.title;
    record["body"] = a.body;
    out << record.dump() << '\n';
  }
}

std::vector<SentenceSpan> SplitSentences(std::string_view body) {
  std::vector<SentenceSpan> spans;
  const size_t n = body.size();
  size_t start = 0;
  while (start < n && IsSpace(body[start])) ++start;
  size_t i = start;
  while (i < n) {
    if (!IsTerminator(body[i])) {
      ++i;
      continue;
    }
    size_t end = i + 1;
    while (end < n && (IsTerminator(body[end]) || IsCloser(body[end]))) ++end;
    size_t next = end;
    while (next < n && IsSpace(body[next])) ++next;
    const bool boundary =
        next > end && next < n &&
        (IsAsciiUpper(body[next]) ||
         (body[next] == '"' && next + 1 < n && IsAsciiUpper(body[next + 1])));
    if (boundary && body[i] == '.' && IsAbbreviation(WordEndingAt(body, i))) {
      i = end;
      continue;
    }
    if (boundary) {
      spans.push_back({start, end});
      start = next;
    }
    i = end;
  }
  size_t last = n;
  while (last > start && IsSpace(body[last - 1])) --last;
  if (last > start) spans.push_back({start, last});
  return spans;
}

std::vector<std::string> ArticleSentences(const Article& article,
                                          bool include_title) {
  std::vector<std::string> out;
  if (include_title && !IsBlank(article.title)) {
    // Titles are headline fragments and are never split further.
    size_t b = 0, e = article.title.size();
    while (b < e && IsSpace(article.title[b])) ++b;
    while (e > b && IsSpace(article.title[e - 1])) --e;
    out.emplace_back(article.title.substr(b, e - b));
  }
  for (const SentenceSpan& s : SplitSentences(article.body)) {
    out.emplace_back(article.body.substr(s.begin, s.end - s.begin));
  }
  return out;
}

}  // namespace mediakg
