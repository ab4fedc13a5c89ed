#ifndef MEDIAKG_CONTRAST_H_
#define MEDIAKG_CONTRAST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mediakg/graph.h"

namespace mediakg {

struct Alignment {
  std::vector<std::string> shared_vertices;  // sorted
  std::vector<EdgeKey> shared_edges;         // sorted
};

Alignment Align(const KnowledgeGraph& a, const KnowledgeGraph& b);

struct ContrastEdge {
  EdgeKey pair;
  double polarity_a = 0.0;
  double polarity_b = 0.0;
  int64_t frequency_a = 0;
  int64_t frequency_b = 0;

  friend bool operator==(const ContrastEdge&, const ContrastEdge&) = default;
};

enum class Lean { kA, kB };

struct ContrastVertex {
  std::string entity;
  double avg_adj_polarity_a = 0.0;
  double avg_adj_polarity_b = 0.0;
  double contrast_score = 0.0;  // avg_adj_polarity_a - avg_adj_polarity_b
  Lean lean = Lean::kA;

  friend bool operator==(const ContrastVertex&, const ContrastVertex&) = default;
};

struct ContrastEdgeOptions {
  int64_t min_freq = 3;
  double min_abs_pol = 0.05;
};

struct ContrastVertexOptions {
  int64_t min_degree = 3;
  int64_t top_k = 20;
};

// Shared edges whose polarities have strictly opposite, nonzero signs, with
// |polarity| >= min_abs_pol and frequency >= min_freq in both graphs.
// Sorted by |polarity_a - polarity_b| descending, then by pair.
std::vector<ContrastEdge> ContrastEdges(const KnowledgeGraph& a,
                                        const KnowledgeGraph& b,
                                        const ContrastEdgeOptions& options = {});

// Shared vertices with degree >= min_degree in both graphs, scored by the
// difference of their mean adjacent-edge polarity. Zero scores are left
// out. Returns the top_k by |score|, ties by entity name.
std::vector<ContrastVertex> ContrastVertices(
    const KnowledgeGraph& a, const KnowledgeGraph& b,
    const ContrastVertexOptions& options = {});

// Export payload: the elements touched by the contrast items, each carrying
// both sources' attributes. Edge endpoints of contrast edges are included;
// for contrast vertices, the shared edges among them are included too.
struct ContrastSubgraph {
  struct Vertex {
    std::string id;
    int64_t weight_a = 0;  // 0 when absent from that source
    int64_t weight_b = 0;
    std::optional<double> contrast_score;
    std::optional<Lean> lean;

    friend bool operator==(const Vertex&, const Vertex&) = default;
  };
  struct Edge {
    EdgeKey pair;
    int64_t frequency_a = 0;
    int64_t frequency_b = 0;
    double polarity_a = 0.0;
    double polarity_b = 0.0;
    double subjectivity_a = 0.0;
    double subjectivity_b = 0.0;
    bool contrast_edge = false;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::string label_a;
  std::string label_b;
  std::vector<Vertex> vertices;  // sorted by id
  std::vector<Edge> edges;       // sorted by pair

  bool empty() const { return vertices.empty() && edges.empty(); }
  friend bool operator==(const ContrastSubgraph&,
                         const ContrastSubgraph&) = default;
};

ContrastSubgraph BuildContrastSubgraph(
    const std::vector<ContrastEdge>& edge_items,
    const std::vector<ContrastVertex>& vertex_items, const KnowledgeGraph& a,
    const KnowledgeGraph& b);

std::string_view ToString(Lean lean);

// Report with a "config" block echoing thresholds and both graphs' build
// configs.
nlohmann::ordered_json ContrastReportJson(
    const KnowledgeGraph& a, const KnowledgeGraph& b,
    const std::vector<ContrastEdge>& edge_items,
    const std::vector<ContrastVertex>& vertex_items,
    const ContrastEdgeOptions& edge_options,
    const ContrastVertexOptions& vertex_options);

}  // namespace mediakg

#endif  // MEDIAKG_CONTRAST_H_
