#ifndef MEDIAKG_INDEXED_GRAPH_H_
#define MEDIAKG_INDEXED_GRAPH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mediakg/graph.h"

namespace mediakg {

// Dense, index-based view of a KnowledgeGraph for the graph algorithms.
// Vertex i is the i-th name in lexicographic order; neighbor lists are
// sorted by index.
struct IndexedGraph {
  struct Arc {
    uint32_t to;
    double weight;
  };

  std::vector<std::string> names;
  std::vector<std::vector<Arc>> adjacency;

  size_t size() const { return names.size(); }
  size_t edge_count() const;

  enum class Weights { kFrequency, kUnit };
  static IndexedGraph From(const KnowledgeGraph& graph, Weights weights);
};

// Connected components; `component[v]` is the component id of vertex v and
// ids are numbered by smallest member.
struct Components {
  std::vector<uint32_t> component;
  std::vector<std::vector<uint32_t>> members;  // sorted ascending
};

Components ConnectedComponents(const IndexedGraph& graph);

}  // namespace mediakg

#endif  // MEDIAKG_INDEXED_GRAPH_H_
