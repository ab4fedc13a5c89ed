#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mediakg/annotate.h"
#include "mediakg/errors.h"

namespace mediakg {
namespace {

using Names = std::set<std::string>;

std::vector<std::string> Surfaces(std::string_view sentence) {
  std::vector<std::string> out;
  for (const auto& m : RecognizeEntities(sentence)) out.push_back(m.surface);
  return out;
}

EntityMention Ner(const std::string& surface, MentionOrigin origin = MentionOrigin::kNer) {
  EntityMention m;
  m.surface = surface;
  m.normalized = surface;
  m.origin = origin;
  return m;
}

SentenceAnnotation WithRelations(std::vector<EntityMention> entities,
                                 std::vector<RelationMention> relations) {
  SentenceAnnotation a;
  a.article_id = "1";
  a.entities = std::move(entities);
  a.relations = std::move(relations);
  return a;
}

TEST(RecognizeEntities, TwoCapitalizedRuns) {
  EXPECT_EQ(Surfaces("Donald Trump met Hillary Clinton."),
            (std::vector<std::string>{"Donald Trump", "Hillary Clinton"}));
}

TEST(RecognizeEntities, LowercaseSentenceHasNone) {
  EXPECT_TRUE(Surfaces("the cat sat.").empty());
}

TEST(RecognizeEntities, BridgesConnectorWords) {
  EXPECT_EQ(Surfaces("Bank of England raised rates."),
            (std::vector<std::string>{"Bank of England"}));
  EXPECT_EQ(Surfaces("He visited the Church of the Holy Sepulchre today."),
            (std::vector<std::string>{"Church of the Holy Sepulchre"}));
  // A trailing connector is not part of the name.
  EXPECT_EQ(Surfaces("He praised Obama of all people."),
            (std::vector<std::string>{"Obama"}));
}

TEST(RecognizeEntities, PunctuationEndsARun) {
  EXPECT_EQ(Surfaces("Merkel, Obama and Putin met."),
            (std::vector<std::string>{"Merkel", "Obama", "Putin"}));
}

TEST(RecognizeEntities, SentenceCaseWordIsNotAName) {
  EXPECT_TRUE(Surfaces("Yesterday the vote failed.").empty());
  EXPECT_EQ(Surfaces("Trump and Clinton debated."),
            (std::vector<std::string>{"Trump", "Clinton"}));
}

TEST(RecognizeEntities, SpansAreCodePointOffsets) {
  const std::string s = "Caf\xc3\xa9 owner Zo\xc3\xab Smith spoke.";
  const auto m = RecognizeEntities(s);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[1].surface, "Zo\xc3\xab Smith");
  EXPECT_EQ(m[1].span, (CharSpan{11, 20}));
  EXPECT_EQ(m[1].normalized, "zo\xc3\xab smith");
}

TEST(AdmissibleEntities, IntersectionDirectMatch) {
  const auto a = WithRelations({Ner("trump")}, {{"trump", "the wall"}});
  EXPECT_EQ(AdmissibleEntities(a, AdmissionMode::kIntersection), Names{"trump"});
}

TEST(AdmissibleEntities, IntersectionWithNoRelationsIsEmpty) {
  const auto a = WithRelations({Ner("trump")}, {});
  EXPECT_EQ(AdmissibleEntities(a, AdmissionMode::kIntersection), Names{});
}

TEST(AdmissibleEntities, TokenBoundarySubstring) {
  const auto a = WithRelations({Ner("donald trump"), Ner("nat")},
                               {{"president donald trump said", "nato"}});
  EXPECT_EQ(AdmissibleEntities(a, AdmissionMode::kIntersection),
            Names{"donald trump"});
}

TEST(AdmissibleEntities, FallsBackToNerWithoutRelationExtraction) {
  const auto a = WithRelations({Ner("trump"), Ner("wall", MentionOrigin::kOieArg)}, {});
  EXPECT_EQ(AdmissibleEntities(a, AdmissionMode::kIntersection, false),
            Names{"trump"});
}

TEST(AdmissibleEntities, UnionTakesAllMentions) {
  const auto a = WithRelations({Ner("trump"), Ner("the wall", MentionOrigin::kOieArg)},
                               {{"trump", "the wall"}});
  EXPECT_EQ(AdmissibleEntities(a, AdmissionMode::kUnion),
            (Names{"the wall", "trump"}));
  EXPECT_EQ(ParseAdmissionMode("union"), AdmissionMode::kUnion);
  EXPECT_FALSE(ParseAdmissionMode("both"));
}

constexpr const char* kTwoLines =
    R"({"article_id":"a","sentence_index":0,"entities":[{"surface":"Angela Merkel","start":0,"end":13,"origin":"NER"}],"relations":[{"arg0":"Angela Merkel","arg1":"the plan"}],"polarity":0.25,"subjectivity":0.5})"
    "\n"
    R"({"article_id":"a","sentence_index":1,"entities":[],"relations":[],"polarity":0,"subjectivity":0})"
    "\n";

std::string ReadError(const std::string& text, const Corpus* corpus = nullptr) {
  std::istringstream in(text);
  try {
    ReadAnnotations(in, "ann.jsonl", corpus);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(ReadAnnotations, WellFormedFile) {
  std::istringstream in(kTwoLines);
  const AnnotationSet set = ReadAnnotations(in, "ann.jsonl");
  ASSERT_EQ(set.sentences.size(), 2u);
  EXPECT_EQ(set.sentences[0].entities[0].normalized, "angela merkel");
  EXPECT_EQ(set.sentences[0].relations[0].arg1, "the plan");
  EXPECT_EQ(set.sentences[0].polarity, 0.25);
  EXPECT_TRUE(set.meta.relations_extracted);
  EXPECT_EQ(set.meta.annotator, "import");
}

TEST(ReadAnnotations, PolarityOutOfRangeNamesFieldAndLine) {
  std::string text = kTwoLines;
  text.replace(text.find("\"polarity\":0,"), 13, "\"polarity\":1.5,");
  EXPECT_EQ(ReadError(text),
            "ann.jsonl:2: field 'polarity' = 1.5 out of range [-1.0, 1.0]");
}

TEST(ReadAnnotations, DanglingArticleId) {
  Corpus corpus;
  corpus.source_label = "BN";
  corpus.articles.push_back({"b", "BN", std::nullopt, "", "x"});
  EXPECT_EQ(ReadError(kTwoLines, &corpus),
            "ann.jsonl:1: article_id 'a' does not exist in the corpus");
}

TEST(ReadAnnotations, SchemaErrors) {
  EXPECT_NE(ReadError(R"({"article_id":"a","sentence_index":0,"entities":[],"polarity":0,"subjectivity":0})")
                .find("ann.jsonl:1: missing field 'relations'"),
            std::string::npos);
  EXPECT_NE(ReadError(R"({"article_id":"a","sentence_index":-1,"entities":[],"relations":[],"polarity":0,"subjectivity":0})")
                .find("non-negative"),
            std::string::npos);
  EXPECT_NE(ReadError(R"({"article_id":"a","sentence_index":0,"entities":[{"surface":"Obama","start":0,"end":4,"origin":"NER"}],"relations":[],"polarity":0,"subjectivity":0})")
                .find("span length 4"),
            std::string::npos);
  EXPECT_NE(ReadError(R"({"article_id":"a","sentence_index":0,"entities":[{"surface":"Obama","start":0,"end":5,"origin":"PER"}],"relations":[],"polarity":0,"subjectivity":0})")
                .find("origin"),
            std::string::npos);
  EXPECT_NE(ReadError(std::string(kTwoLines) + kTwoLines).find("ann.jsonl:3: duplicate"),
            std::string::npos);
  EXPECT_NE(ReadError("[1,2]\n").find("JSON object"), std::string::npos);
}

TEST(ReadAnnotations, HeaderMustMatchCorpusSource) {
  Corpus corpus;
  corpus.source_label = "BN";
  corpus.articles.push_back({"a", "BN", std::nullopt, "", "x"});
  const std::string header = "# {\"source_label\":\"NYT\"}\n";
  EXPECT_NE(ReadError(header + kTwoLines, &corpus).find("'NYT'"), std::string::npos);
}

TEST(ReadAnnotations, SortedByArticleThenIndex) {
  Corpus corpus;
  corpus.source_label = "BN";
  corpus.articles.push_back({"z", "BN", std::nullopt, "", "x"});
  corpus.articles.push_back({"a", "BN", std::nullopt, "", "x"});
  const std::string text =
      R"({"article_id":"a","sentence_index":1,"entities":[],"relations":[],"polarity":0,"subjectivity":0})"
      "\n"
      R"({"article_id":"z","sentence_index":0,"entities":[],"relations":[],"polarity":0,"subjectivity":0})"
      "\n"
      R"({"article_id":"a","sentence_index":0,"entities":[],"relations":[],"polarity":0,"subjectivity":0})"
      "\n";
  std::istringstream in(text);
  const auto set = ReadAnnotations(in, "x", &corpus);
  ASSERT_EQ(set.sentences.size(), 3u);
  EXPECT_EQ(set.sentences[0].article_id, "z");
  EXPECT_EQ(set.sentences[1].article_id, "a");
  EXPECT_EQ(set.sentences[1].sentence_index, 0);
  EXPECT_EQ(set.meta.source_label, "BN");
}

TEST(WriteAnnotations, RoundTrip) {
  Corpus corpus;
  corpus.source_label = "BN";
  corpus.articles.push_back({"1", "BN", std::nullopt, "Obama visits Berlin",
                             "Barack Obama met Angela Merkel. It was not a good day."});
  corpus.articles.push_back({"2", "BN", std::nullopt, "", "The Bank of England said no."});
  AnnotationSet set;
  set.meta.annotator = "builtin";
  set.meta.source_label = "BN";
  set.meta.relations_extracted = false;
  set.meta.lexicon = "default";
  set.sentences = AnnotateBuiltin(corpus, SentimentLexicon::Default());
  set.sentences[1].relations.push_back({"Barack Obama", "Angela Merkel"});
  ASSERT_EQ(set.sentences.size(), 4u);

  std::ostringstream out;
  WriteAnnotations(set, out);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadAnnotations(in, "x", &corpus), set);
}

TEST(AnnotateBuiltin, IndependentOfThreadCount) {
  Corpus corpus;
  corpus.source_label = "BN";
  for (int i = 0; i < 40; ++i) {
    corpus.articles.push_back({std::to_string(i), "BN", std::nullopt,
                               "Title " + std::to_string(i),
                               "Angela Merkel praised Barack Obama. It was bad. "
                               "The Bank of England was not happy."});
  }
  const auto one = AnnotateBuiltin(corpus, SentimentLexicon::Default(), {true, 1});
  const auto many = AnnotateBuiltin(corpus, SentimentLexicon::Default(), {true, 8});
  EXPECT_EQ(one, many);
  EXPECT_EQ(one.size(), 40u * 4u);
}

}  // namespace
}  // namespace mediakg
