#ifndef MEDIAKG_GRAPH_H_
#define MEDIAKG_GRAPH_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mediakg/annotate.h"
#include "mediakg/canon.h"

namespace mediakg {

inline constexpr std::string_view kToolName = "mediakg";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Unordered vertex pair stored with u < v.
struct EdgeKey {
  std::string u;
  std::string v;

  static EdgeKey Of(std::string_view a, std::string_view b);

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeAttrs {
  int64_t frequency = 0;       // co-mention count
  double polarity = 0.0;       // mean over supporting sentences
  double subjectivity = 0.0;   // mean over supporting sentences

  friend bool operator==(const EdgeAttrs&, const EdgeAttrs&) = default;
};

// Undirected, vertex- and edge-weighted entity graph of one source.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(std::string source_label)
      : source_label_(std::move(source_label)) {}

  const std::string& source_label() const { return source_label_; }
  void set_source_label(std::string label) { source_label_ = std::move(label); }

  // Adds `weight` to the vertex, creating it if needed.
  void AddVertex(const std::string& name, int64_t weight);
  // Inserts or replaces an edge. Both endpoints must exist and differ;
  // throws InvariantError otherwise.
  void SetEdge(const EdgeKey& key, const EdgeAttrs& attrs);

  const std::map<std::string, int64_t, std::less<>>& vertices() const {
    return vertices_;
  }
  const std::map<EdgeKey, EdgeAttrs>& edges() const { return edges_; }
  const EdgeAttrs* FindEdge(std::string_view a, std::string_view b) const;

  bool empty() const { return vertices_.empty(); }
  size_t vertex_count() const { return vertices_.size(); }
  size_t edge_count() const { return edges_.size(); }

  // Thresholds and modes the graph was built with, in insertion order.
  nlohmann::ordered_json& build_config() { return build_config_; }
  const nlohmann::ordered_json& build_config() const { return build_config_; }

  // Checks the structural invariants; throws InvariantError.
  void Validate() const;

  friend bool operator==(const KnowledgeGraph&, const KnowledgeGraph&) = default;

 private:
  std::string source_label_;
  std::map<std::string, int64_t, std::less<>> vertices_;
  std::map<EdgeKey, EdgeAttrs> edges_;
  nlohmann::ordered_json build_config_ = nlohmann::ordered_json::object();
};

enum class EdgeMode { kAuto, kSentenceCooccurrence, kRelationPair };

std::string_view ToString(EdgeMode mode);
std::optional<EdgeMode> ParseEdgeMode(std::string_view text);

struct BuildGraphOptions {
  std::string source_label;
  // kAuto picks relation_pair when any annotation carries relations.
  EdgeMode edge_mode = EdgeMode::kAuto;
  AdmissionMode admission = AdmissionMode::kIntersection;
  bool relations_extracted = true;
  int threads = 1;
};

struct BuildGraphResult {
  KnowledgeGraph graph;
  EdgeMode resolved_edge_mode = EdgeMode::kSentenceCooccurrence;
  std::vector<std::string> warnings;
};

// Admissible mention counts per normalized surface, one per sentence in which
// the surface is admitted. This is the input of BuildAliasTable.
MentionCounts CountAdmissibleMentions(
    std::span<const SentenceAnnotation> annotations, AdmissionMode admission,
    bool relations_extracted);

// Builds the entity graph. Per sentence the admissible entities are
// canonicalized and deduplicated; each canonical entity adds 1 to its vertex
// weight. Co-mentions come from every pair in the sentence
// (sentence_cooccurrence) or from entities inside ARG0 x ARG1 of each
// relation (relation_pair, one contribution per relation). Edge polarity and
// subjectivity are means over contributing sentences. The result does not
// depend on annotation order or thread count. Surfaces missing from `table`
// produce warnings, not errors.
BuildGraphResult BuildGraph(std::span<const SentenceAnnotation> annotations,
                            const AliasTable& table,
                            const BuildGraphOptions& options);

// Removes vertices lighter than min_vertex_weight and edges rarer than
// min_edge_freq (and edges touching removed vertices), then removes
// vertices that lost all their edges. Throws InputError on thresholds < 1.
KnowledgeGraph FilterGraph(const KnowledgeGraph& graph,
                           int64_t min_vertex_weight, int64_t min_edge_freq);

// Native JSON graph file. Layout:
//   {"meta": {"tool", "version", "source_label", "build_config"},
//    "vertices": [{"id", "weight"}, ...],      lexicographic by id
//    "edges": [{"source", "target", "frequency", "polarity",
//               "subjectivity"}, ...]}         by (source, target)
// One vertex/edge per line; output is byte-stable.
void WriteGraphJson(const KnowledgeGraph& graph, std::ostream& out,
                    const nlohmann::ordered_json& extra_meta = {});
KnowledgeGraph ReadGraphJson(std::istream& in, std::string_view name);
KnowledgeGraph LoadGraphJson(const std::filesystem::path& path);

}  // namespace mediakg

#endif  // MEDIAKG_GRAPH_H_
