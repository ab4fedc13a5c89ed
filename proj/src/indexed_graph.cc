#include "mediakg/indexed_graph.h"

#include <algorithm>
#include <unordered_map>

namespace mediakg {

size_t IndexedGraph::edge_count() const {
  size_t arcs = 0;
  for (const auto& list : adjacency) arcs += list.size();
  return arcs / 2;
}

IndexedGraph IndexedGraph::From(const KnowledgeGraph& graph, Weights weights) {
  IndexedGraph out;
  out.names.reserve(graph.vertex_count());
  std::unordered_map<std::string_view, uint32_t> index;
  for (const auto& [name, weight] : graph.vertices()) {
    index.emplace(name, static_cast<uint32_t>(out.names.size()));
    out.names.push_back(name);
  }
  out.adjacency.resize(out.names.size());
  for (const auto& [key, attrs] : graph.edges()) {
    const uint32_t u = index.at(key.u);
    const uint32_t v = index.at(key.v);
    const double w = weights == Weights::kUnit
                         ? 1.0
                         : static_cast<double>(attrs.frequency);
    out.adjacency[u].push_back({v, w});
    out.adjacency[v].push_back({u, w});
  }
  for (auto& list : out.adjacency) {
    std::sort(list.begin(), list.end(),
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
  return out;
}

Components ConnectedComponents(const IndexedGraph& graph) {
  constexpr uint32_t kUnseen = UINT32_MAX;
  Components out;
  out.component.assign(graph.size(), kUnseen);
  std::vector<uint32_t> stack;
  for (uint32_t root = 0; root < graph.size(); ++root) {
    if (out.component[root] != kUnseen) continue;
    const auto id = static_cast<uint32_t>(out.members.size());
    out.members.emplace_back();
    out.component[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const uint32_t v = stack.back();
      stack.pop_back();
      out.members[id].push_back(v);
      for (const auto& arc : graph.adjacency[v]) {
        if (out.component[arc.to] == kUnseen) {
          out.component[arc.to] = id;
          stack.push_back(arc.to);
        }
      }
    }
    std::sort(out.members[id].begin(), out.members[id].end());
  }
  return out;
}

}  // namespace mediakg
