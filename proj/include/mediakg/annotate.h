#ifndef MEDIAKG_ANNOTATE_H_
#define MEDIAKG_ANNOTATE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mediakg/corpus.h"
#include "mediakg/sentiment.h"

namespace mediakg {

enum class MentionOrigin { kNer, kOieArg };

std::string_view ToString(MentionOrigin origin);

// Half-open interval of Unicode code points within a sentence.
struct CharSpan {
  size_t start = 0;
  size_t end = 0;

  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct EntityMention {
  std::string surface;
  std::string normalized;
  CharSpan span;
  MentionOrigin origin = MentionOrigin::kNer;

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

// ARG0/ARG1 surfaces of one open-IE extraction.
struct RelationMention {
  std::string arg0;
  std::string arg1;

  friend bool operator==(const RelationMention&,
                         const RelationMention&) = default;
};

struct SentenceAnnotation {
  std::string article_id;
  int sentence_index = 0;
  std::vector<EntityMention> entities;
  std::vector<RelationMention> relations;
  double polarity = 0.0;
  double subjectivity = 0.0;

  friend bool operator==(const SentenceAnnotation&,
                         const SentenceAnnotation&) = default;
};

// Provenance carried in the '#'-prefixed JSON header line of an annotation
// file. `relations_extracted` is false for annotators without open IE (the
// built-in one); it switches admission to the NER-only fallback.
struct AnnotationMeta {
  std::string annotator = "import";
  std::string source_label;
  bool relations_extracted = true;
  bool include_title = true;
  std::string lexicon;
  // Settings of the run that produced the file; null when unknown.
  nlohmann::ordered_json run_config;

  friend bool operator==(const AnnotationMeta&, const AnnotationMeta&) = default;
};

struct AnnotationSet {
  AnnotationMeta meta;
  std::vector<SentenceAnnotation> sentences;

  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

// Capitalization-based recognizer. Entities are maximal runs of capitalized
// non-stopword tokens; "of"/"the" are bridged when a capitalized token
// follows ("Bank of England"). A single capitalized token at the start of
// the sentence that is directly followed by a stopword is dropped
// ("Yesterday the ..."). Spans are code-point offsets into `sentence`.
std::vector<EntityMention> RecognizeEntities(std::string_view sentence);

struct BuiltinAnnotateOptions {
  bool include_title = true;
  int threads = 1;
};

// One annotation per sentence in (article, sentence_index) order; the order
// is independent of `threads`.
std::vector<SentenceAnnotation> AnnotateBuiltin(
    const Corpus& corpus, const SentimentLexicon& lexicon,
    const BuiltinAnnotateOptions& options = {});

// Parses and validates an annotation file. When `corpus` is given, every
// article_id must resolve against it and the result is ordered by corpus
// article order, otherwise by first appearance of the article in the file;
// sentences are ordered by index. Throws InputError with the line number on
// schema, range, reference and duplicate-index errors.
AnnotationSet ReadAnnotations(std::istream& in, std::string_view name,
                              const Corpus* corpus = nullptr);
AnnotationSet ImportAnnotations(const std::filesystem::path& path,
                                const Corpus* corpus = nullptr);

void WriteAnnotations(const AnnotationSet& annotations, std::ostream& out);

enum class AdmissionMode { kIntersection, kUnion };

std::string_view ToString(AdmissionMode mode);
std::optional<AdmissionMode> ParseAdmissionMode(std::string_view text);

// Normalized entities that may become vertices.
//   intersection: NER mentions that also occur, on token boundaries, inside
//     some relation argument of the same sentence. If the annotator did not
//     extract relations at all, all NER mentions are admitted.
//   union: every NER and OIE-argument mention.
std::set<std::string> AdmissibleEntities(const SentenceAnnotation& annotation,
                                         AdmissionMode mode,
                                         bool relations_extracted = true);

}  // namespace mediakg

#endif  // MEDIAKG_ANNOTATE_H_
