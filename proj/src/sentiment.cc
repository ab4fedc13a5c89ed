#include "mediakg/sentiment.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "mediakg/errors.h"

namespace mediakg {

namespace internal {
extern const std::string_view kDefaultLexiconTsv;
}  // namespace internal

namespace {

constexpr double kNegationFactor = -0.5;
constexpr size_t kNegationWindow = 3;

double ParseNumber(std::string_view field, std::string_view where) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(std::string(where) + ": invalid number '" +
                     std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

void SentimentLexicon::AddEntry(std::string word, const LexiconEntry& entry) {
  if (word.empty()) throw InputError("lexicon entry with empty word");
  if (!(entry.polarity >= -1.0 && entry.polarity <= 1.0)) {
    throw InputError("lexicon entry '" + word + "': polarity out of [-1, 1]");
  }
  if (!(entry.subjectivity >= 0.0 && entry.subjectivity <= 1.0)) {
    throw InputError("lexicon entry '" + word +
                     "': subjectivity out of [0, 1]");
  }
  if (!(entry.intensity > 0.0)) {
    throw InputError("lexicon entry '" + word + "': intensity must be > 0");
  }
  if (negators_.contains(word)) {
    throw InputError("lexicon word '" + word + "' is also a negator");
  }
  entries_[std::move(word)] = entry;
}

void SentimentLexicon::AddNegator(std::string word) {
  if (word.empty()) throw InputError("empty negator");
  if (entries_.contains(word)) {
    throw InputError("negator '" + word + "' is also a lexicon entry");
  }
  negators_.insert(std::move(word));
}

SentimentLexicon SentimentLexicon::Parse(std::istream& in,
                                         std::string_view name) {
  SentimentLexicon lexicon;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = std::string(name) + ":" + std::to_string(line_no);
    try {
      if (line[0] == '!') {
        lexicon.AddNegator(line.substr(1));
        continue;
      }
      const auto fields = SplitTabs(line);
      if (fields.size() < 3 || fields.size() > 4) {
        throw InputError("expected word, polarity, subjectivity[, intensity]");
      }
      LexiconEntry entry;
      entry.polarity = ParseNumber(fields[1], where);
      entry.subjectivity = ParseNumber(fields[2], where);
      if (fields.size() == 4) entry.intensity = ParseNumber(fields[3], where);
      std::string word(fields[0]);
      if (lexicon.entries_.contains(word)) {
        throw InputError("duplicate entry '" + word + "'");
      }
      lexicon.AddEntry(std::move(word), entry);
    } catch (const InputError& e) {
      const std::string message = e.what();
      if (message.starts_with(where)) throw;
      throw InputError(where + ": " + message);
    }
  }
  return lexicon;
}

SentimentLexicon SentimentLexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open lexicon file " + path.string());
  return Parse(in, path.string());
}

const SentimentLexicon& SentimentLexicon::Default() {
  static const SentimentLexicon kDefault = [] {
    std::istringstream in{std::string(internal::kDefaultLexiconTsv)};
    return Parse(in, "<default lexicon>");
  }();
  return kDefault;
}

const LexiconEntry* SentimentLexicon::Find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

bool SentimentLexicon::IsNegator(std::string_view word) const {
  return negators_.find(word) != negators_.end();
}

SentimentLexicon SentimentLexicon::Mirrored() const {
  SentimentLexicon mirrored = *this;
  for (auto& [word, entry] : mirrored.entries_) entry.polarity = -entry.polarity;
  return mirrored;
}

SentimentScore ScoreSentence(std::span<const std::string> tokens,
                             const SentimentLexicon& lexicon) {
  double polarity_sum = 0.0;
  double subjectivity_sum = 0.0;
  size_t matched = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const LexiconEntry* entry = lexicon.Find(tokens[i]);
    if (entry == nullptr) continue;
    double p = entry->polarity;
    const size_t window_start = i >= kNegationWindow ? i - kNegationWindow : 0;
    for (size_t j = window_start; j < i; ++j) {
      if (lexicon.IsNegator(tokens[j])) {
        p *= kNegationFactor;
        break;
      }
    }
    if (i > 0) {
      const LexiconEntry* modifier = lexicon.Find(tokens[i - 1]);
      if (modifier != nullptr && modifier->intensity != 1.0) {
        p = std::clamp(p * modifier->intensity, -1.0, 1.0);
      }
    }
    polarity_sum += p;
    subjectivity_sum += entry->subjectivity;
    ++matched;
  }
  if (matched == 0) return {};
  const double n = static_cast<double>(matched);
  return {std::clamp(polarity_sum / n, -1.0, 1.0),
          std::clamp(subjectivity_sum / n, 0.0, 1.0)};
}

}  // namespace mediakg
