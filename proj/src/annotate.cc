#include "mediakg/annotate.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mediakg/errors.h"
#include "mediakg/parallel.h"
#include "mediakg/text.h"

namespace mediakg {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr size_t kMaxBridge = 2;

bool IsConnector(std::string_view lower) {
  return lower == "of" || lower == "the";
}

// Entity-bearing token: capitalized and not a function word.
bool IsNameToken(const Token& t) {
  return IsAsciiUpper(t.text.front()) && !IsStopword(AsciiLower(t.text));
}

bool OnlySpaceBetween(std::string_view text, const Token& a, const Token& b) {
  for (size_t i = a.end; i < b.begin; ++i) {
    if (!IsSpace(text[i])) return false;
  }
  return true;
}

[[noreturn]] void Fail(std::string_view where, const std::string& message) {
  throw InputError(std::string(where) + ": " + message);
}

const json& Field(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string StringField(const json& obj, const char* key,
                        std::string_view where) {
  const json& v = Field(obj, key, where);
  if (!v.is_string()) Fail(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int64_t NonNegativeInt(const json& obj, const char* key,
                       std::string_view where) {
  const json& v = Field(obj, key, where);
  if (!v.is_number_integer() || v.get<int64_t>() < 0) {
    Fail(where, std::string("field '") + key +
                    "' must be a non-negative integer");
  }
  return v.get<int64_t>();
}

double RangedNumber(const json& obj, const char* key, double lo, double hi,
                    std::string_view where) {
  const json& v = Field(obj, key, where);
  if (!v.is_number()) Fail(where, std::string("field '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!(x >= lo && x <= hi)) {
    Fail(where, std::string("field '") + key + "' = " + v.dump() +
                    " out of range [" + json(lo).dump() + ", " +
                    json(hi).dump() + "]");
  }
  return x;
}

EntityMention ParseEntity(const json& obj, std::string_view where) {
  if (!obj.is_object()) Fail(where, "entity must be an object");
  EntityMention m;
  m.surface = StringField(obj, "surface", where);
  if (m.surface.empty()) Fail(where, "entity with empty surface");
  m.span.start = static_cast<size_t>(NonNegativeInt(obj, "start", where));
  m.span.end = static_cast<size_t>(NonNegativeInt(obj, "end", where));
  if (m.span.start >= m.span.end) {
    Fail(where, "entity '" + m.surface + "' has an empty or inverted span");
  }
  if (m.span.end - m.span.start != CodePointCount(m.surface)) {
    Fail(where, "entity '" + m.surface + "' span length " +
                    std::to_string(m.span.end - m.span.start) +
                    " does not match its surface length");
  }
  const std::string origin = StringField(obj, "origin", where);
  if (origin == "NER") {
    m.origin = MentionOrigin::kNer;
  } else if (origin == "OIE_ARG") {
    m.origin = MentionOrigin::kOieArg;
  } else {
    Fail(where, "entity origin must be \"NER\" or \"OIE_ARG\", got \"" +
                    origin + "\"");
  }
  m.normalized = NormalizeSurface(m.surface);
  if (m.normalized.empty()) {
    Fail(where, "entity '" + m.surface + "' normalizes to an empty string");
  }
  return m;
}

void ReadMetaLine(std::string_view line, AnnotationMeta& meta) {
  std::string_view body = line.substr(1);
  while (!body.empty() && IsSpace(body.front())) body.remove_prefix(1);
  if (body.empty() || body.front() != '{') return;
  ordered_json header =
      ordered_json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (!header.is_object()) return;
  if (auto it = header.find("annotator"); it != header.end() && it->is_string())
    meta.annotator = *it;
  if (auto it = header.find("source_label");
      it != header.end() && it->is_string())
    meta.source_label = *it;
  if (auto it = header.find("relations_extracted");
      it != header.end() && it->is_boolean())
    meta.relations_extracted = *it;
  if (auto it = header.find("include_title");
      it != header.end() && it->is_boolean())
    meta.include_title = *it;
  if (auto it = header.find("lexicon"); it != header.end() && it->is_string())
    meta.lexicon = *it;
  if (auto it = header.find("run_config"); it != header.end() && it->is_object())
    meta.run_config = *it;
}

}  // namespace

std::string_view ToString(MentionOrigin origin) {
  return origin == MentionOrigin::kNer ? "NER" : "OIE_ARG";
}

std::string_view ToString(AdmissionMode mode) {
  return mode == AdmissionMode::kIntersection ? "intersection" : "union";
}

std::optional<AdmissionMode> ParseAdmissionMode(std::string_view text) {
  if (text == "intersection") return AdmissionMode::kIntersection;
  if (text == "union") return AdmissionMode::kUnion;
  return std::nullopt;
}

std::vector<EntityMention> RecognizeEntities(std::string_view sentence) {
  const std::vector<Token> tokens = TokenizeWords(sentence);
  std::vector<EntityMention> mentions;
  const size_t n = tokens.size();
  size_t i = 0;
  while (i < n) {
    if (!IsNameToken(tokens[i])) {
      ++i;
      continue;
    }
    const size_t first = i;
    size_t last = i;
    size_t j = i + 1;
    while (j < n && OnlySpaceBetween(sentence, tokens[j - 1], tokens[j])) {
      // Once a name has started, any capitalized word continues it, so
      // function words that double as names survive ("Theresa May").
      if (IsAsciiUpper(tokens[j].text.front())) {
        last = j++;
        continue;
      }
      // Bridge "of"/"the" only when another name token follows directly.
      size_t k = j;
      while (k < n && k - j < kMaxBridge &&
             OnlySpaceBetween(sentence, tokens[k - 1], tokens[k]) &&
             IsConnector(AsciiLower(tokens[k].text))) {
        ++k;
      }
      if (k > j && k < n &&
          OnlySpaceBetween(sentence, tokens[k - 1], tokens[k]) &&
          IsNameToken(tokens[k])) {
        last = k;
        j = k + 1;
        continue;
      }
      break;
    }
    i = last + 1;
    // A lone capitalized first word before a function word is usually just
    // sentence case ("Critics said", "Yesterday the"), except in a list of
    // names ("Trump and Clinton").
    if (first == 0 && last == 0 && n > 1 &&
        IsStopword(AsciiLower(tokens[1].text))) {
      const std::string next = AsciiLower(tokens[1].text);
      const bool listed = (next == "and" || next == "or") && n > 2 &&
                          IsNameToken(tokens[2]);
      if (!listed) continue;
    }
    EntityMention m;
    const size_t begin = tokens[first].begin;
    const size_t end = tokens[last].end;
    m.surface = std::string(sentence.substr(begin, end - begin));
    m.normalized = NormalizeSurface(m.surface);
    if (m.normalized.empty()) continue;
    m.span.start = CodePointOffset(sentence, begin);
    m.span.end = m.span.start + CodePointCount(m.surface);
    m.origin = MentionOrigin::kNer;
    mentions.push_back(std::move(m));
  }
  return mentions;
}

std::vector<SentenceAnnotation> AnnotateBuiltin(
    const Corpus& corpus, const SentimentLexicon& lexicon,
    const BuiltinAnnotateOptions& options) {
  std::vector<std::vector<SentenceAnnotation>> per_article(
      corpus.articles.size());
  ParallelFor(corpus.articles.size(), options.threads, [&](size_t a) {
    const Article& article = corpus.articles[a];
    const auto sentences = ArticleSentences(article, options.include_title);
    auto& out = per_article[a];
    out.reserve(sentences.size());
    for (size_t s = 0; s < sentences.size(); ++s) {
      SentenceAnnotation ann;
      ann.article_id = article.id;
      ann.sentence_index = static_cast<int>(s);
      ann.entities = RecognizeEntities(sentences[s]);
      const auto tokens = LowercaseTokens(sentences[s]);
      const SentimentScore score = ScoreSentence(tokens, lexicon);
      ann.polarity = score.polarity;
      ann.subjectivity = score.subjectivity;
      out.push_back(std::move(ann));
    }
  });
  std::vector<SentenceAnnotation> all;
  for (auto& part : per_article) {
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  return all;
}

AnnotationSet ReadAnnotations(std::istream& in, std::string_view name,
                              const Corpus* corpus) {
  AnnotationSet set;
  std::unordered_map<std::string, size_t> article_rank;
  if (corpus != nullptr) {
    for (size_t i = 0; i < corpus->articles.size(); ++i) {
      article_rank.emplace(corpus->articles[i].id, i);
    }
    set.meta.source_label = corpus->source_label;
  }
  std::map<std::pair<std::string, int>, size_t> seen;  // key -> line
  std::vector<std::pair<size_t, SentenceAnnotation>> ranked;
  std::string line;
  size_t line_no = 0;
  bool meta_read = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') {
      if (!meta_read) {
        const std::string corpus_label = set.meta.source_label;
        ReadMetaLine(line, set.meta);
        if (corpus != nullptr && !set.meta.source_label.empty() &&
            set.meta.source_label != corpus_label) {
          Fail(std::string(name) + ":" + std::to_string(line_no),
               "annotations are for source '" + set.meta.source_label +
                   "' but the corpus is '" + corpus_label + "'");
        }
        if (set.meta.source_label.empty()) set.meta.source_label = corpus_label;
        meta_read = true;
      }
      continue;
    }
    const std::string where = std::string(name) + ":" + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(where, std::string("malformed JSON: ") + e.what());
    }
    if (!record.is_object()) Fail(where, "record must be a JSON object");

    SentenceAnnotation ann;
    ann.article_id = StringField(record, "article_id", where);
    if (ann.article_id.empty()) Fail(where, "empty article_id");
    const int64_t index = NonNegativeInt(record, "sentence_index", where);
    if (index > std::numeric_limits<int>::max()) {
      Fail(where, "sentence_index too large");
    }
    ann.sentence_index = static_cast<int>(index);

    const json& entities = Field(record, "entities", where);
    if (!entities.is_array()) Fail(where, "field 'entities' must be an array");
    for (const json& e : entities) ann.entities.push_back(ParseEntity(e, where));

    const json& relations = Field(record, "relations", where);
    if (!relations.is_array()) Fail(where, "field 'relations' must be an array");
    for (const json& r : relations) {
      if (!r.is_object()) Fail(where, "relation must be an object");
      RelationMention rel{StringField(r, "arg0", where),
                          StringField(r, "arg1", where)};
      if (rel.arg0.empty() || rel.arg1.empty()) {
        Fail(where, "relation with an empty argument");
      }
      ann.relations.push_back(std::move(rel));
    }
    ann.polarity = RangedNumber(record, "polarity", -1.0, 1.0, where);
    ann.subjectivity = RangedNumber(record, "subjectivity", 0.0, 1.0, where);

    size_t rank = 0;
    if (corpus != nullptr) {
      auto it = article_rank.find(ann.article_id);
      if (it == article_rank.end()) {
        Fail(where, "article_id '" + ann.article_id +
                        "' does not exist in the corpus");
      }
      rank = it->second;
    } else {
      rank = article_rank.emplace(ann.article_id, article_rank.size())
                 .first->second;
    }
    auto [it, inserted] =
        seen.emplace(std::make_pair(ann.article_id, ann.sentence_index), line_no);
    if (!inserted) {
      Fail(where, "duplicate sentence_index " +
                      std::to_string(ann.sentence_index) + " for article '" +
                      ann.article_id + "' (first seen on line " +
                      std::to_string(it->second) + ")");
    }
    ranked.emplace_back(rank, std::move(ann));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first < b.first;
                     return a.second.sentence_index < b.second.sentence_index;
                   });
  set.sentences.reserve(ranked.size());
  for (auto& [rank, ann] : ranked) set.sentences.push_back(std::move(ann));
  return set;
}

AnnotationSet ImportAnnotations(const std::filesystem::path& path,
                                const Corpus* corpus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open annotation file " + path.string());
  return ReadAnnotations(in, path.string(), corpus);
}

void WriteAnnotations(const AnnotationSet& annotations, std::ostream& out) {
  ordered_json header;
  header["format"] = "mediakg-annotations";
  header["version"] = 1;
  header["annotator"] = annotations.meta.annotator;
  header["source_label"] = annotations.meta.source_label;
  header["relations_extracted"] = annotations.meta.relations_extracted;
  header["include_title"] = annotations.meta.include_title;
  header["lexicon"] = annotations.meta.lexicon;
  if (!annotations.meta.run_config.is_null()) {
    header["run_config"] = annotations.meta.run_config;
  }
  out << "# " << header.dump() << '\n';
  for (const SentenceAnnotation& ann : annotations.sentences) {
    ordered_json record;
    record["article_id"] = ann.article_id;
    record["sentence_index"] = ann.sentence_index;
    ordered_json entities = ordered_json::array();
    for (const EntityMention& m : ann.entities) {
      ordered_json e;
      e["surface"] = m.surface;
      e["start"] = m.span.start;
      e["end"] = m.span.end;
      e["origin"] = ToString(m.origin);
      entities.push_back(std::move(e));
    }
    record["entities"] = std::move(entities);
    ordered_json relations = ordered_json::array();
    for (const RelationMention& r : ann.relations) {
      ordered_json rel;
      rel["arg0"] = r.arg0;
      rel["arg1"] = r.arg1;
      relations.push_back(std::move(rel));
    }
    record["relations"] = std::move(relations);
    record["polarity"] = ann.polarity;
    record["subjectivity"] = ann.subjectivity;
    out << record.dump() << '\n';
  }
}

std::set<std::string> AdmissibleEntities(const SentenceAnnotation& annotation,
                                         AdmissionMode mode,
                                         bool relations_extracted) {
  std::set<std::string> admitted;
  if (mode == AdmissionMode::kUnion) {
    for (const EntityMention& m : annotation.entities) admitted.insert(m.normalized);
    return admitted;
  }
  if (!relations_extracted) {
    for (const EntityMention& m : annotation.entities) {
      if (m.origin == MentionOrigin::kNer) admitted.insert(m.normalized);
    }
    return admitted;
  }
  std::vector<std::string> arguments;
  arguments.reserve(annotation.relations.size() * 2);
  for (const RelationMention& r : annotation.relations) {
    arguments.push_back(NormalizeSurface(r.arg0));
    arguments.push_back(NormalizeSurface(r.arg1));
  }
  for (const EntityMention& m : annotation.entities) {
    if (m.origin != MentionOrigin::kNer) continue;
    for (const std::string& arg : arguments) {
      if (ContainsTokenRun(arg, m.normalized)) {
        admitted.insert(m.normalized);
        break;
      }
    }
  }
  return admitted;
}

}  // namespace mediakg
