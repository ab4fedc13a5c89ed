#include "mediakg/contrast.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mediakg/errors.h"

namespace mediakg {
namespace {

using nlohmann::ordered_json;

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

struct Adjacent {
  int64_t degree = 0;
  double polarity_sum = 0.0;
};

std::map<std::string, Adjacent, std::less<>> AdjacentPolarity(
    const KnowledgeGraph& g) {
  std::map<std::string, Adjacent, std::less<>> out;
  for (const auto& [key, attrs] : g.edges()) {
    for (const std::string* v : {&key.u, &key.v}) {
      Adjacent& adj = out[*v];
      ++adj.degree;
      adj.polarity_sum += attrs.polarity;
    }
  }
  return out;
}

}  // namespace

std::string_view ToString(Lean lean) { return lean == Lean::kA ? "A" : "B"; }

Alignment Align(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  Alignment out;
  for (const auto& [name, weight] : a.vertices()) {
    if (b.vertices().contains(name)) out.shared_vertices.push_back(name);
  }
  for (const auto& [key, attrs] : a.edges()) {
    if (b.edges().contains(key)) out.shared_edges.push_back(key);
  }
  return out;
}

std::vector<ContrastEdge> ContrastEdges(const KnowledgeGraph& a,
                                        const KnowledgeGraph& b,
                                        const ContrastEdgeOptions& options) {
  if (options.min_freq < 1 || !(options.min_abs_pol >= 0.0)) {
    throw InputError("contrast edges need min_freq >= 1 and min_abs_pol >= 0");
  }
  std::vector<ContrastEdge> items;
  for (const auto& [key, ea] : a.edges()) {
    auto it = b.edges().find(key);
    if (it == b.edges().end()) continue;
    const EdgeAttrs& eb = it->second;
    if (Sign(ea.polarity) * Sign(eb.polarity) >= 0) continue;
    if (std::fabs(ea.polarity) < options.min_abs_pol ||
        std::fabs(eb.polarity) < options.min_abs_pol) {
      continue;
    }
    if (ea.frequency < options.min_freq || eb.frequency < options.min_freq) {
      continue;
    }
    items.push_back({key, ea.polarity, eb.polarity, ea.frequency, eb.frequency});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const ContrastEdge& x, const ContrastEdge& y) {
                     const double dx = std::fabs(x.polarity_a - x.polarity_b);
                     const double dy = std::fabs(y.polarity_a - y.polarity_b);
                     if (dx != dy) return dx > dy;
                     return x.pair < y.pair;
                   });
  return items;
}

std::vector<ContrastVertex> ContrastVertices(
    const KnowledgeGraph& a, const KnowledgeGraph& b,
    const ContrastVertexOptions& options) {
  if (options.min_degree < 1 || options.top_k < 1) {
    throw InputError("contrast vertices need min_degree >= 1 and top_k >= 1");
  }
  const auto adj_a = AdjacentPolarity(a);
  const auto adj_b = AdjacentPolarity(b);
  std::vector<ContrastVertex> items;
  for (const auto& [name, pa] : adj_a) {
    auto it = adj_b.find(name);
    if (it == adj_b.end()) continue;
    const Adjacent& pb = it->second;
    if (pa.degree < options.min_degree || pb.degree < options.min_degree) {
      continue;
    }
    ContrastVertex v;
    v.entity = name;
    v.avg_adj_polarity_a = pa.polarity_sum / static_cast<double>(pa.degree);
    v.avg_adj_polarity_b = pb.polarity_sum / static_cast<double>(pb.degree);
    v.contrast_score = v.avg_adj_polarity_a - v.avg_adj_polarity_b;
    if (v.contrast_score == 0.0) continue;
    v.lean = v.contrast_score > 0.0 ? Lean::kA : Lean::kB;
    items.push_back(std::move(v));
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const ContrastVertex& x, const ContrastVertex& y) {
                     const double sx = std::fabs(x.contrast_score);
                     const double sy = std::fabs(y.contrast_score);
                     if (sx != sy) return sx > sy;
                     return x.entity < y.entity;
                   });
  if (items.size() > static_cast<size_t>(options.top_k)) {
    items.resize(static_cast<size_t>(options.top_k));
  }
  return items;
}

ContrastSubgraph BuildContrastSubgraph(
    const std::vector<ContrastEdge>& edge_items,
    const std::vector<ContrastVertex>& vertex_items, const KnowledgeGraph& a,
    const KnowledgeGraph& b) {
  ContrastSubgraph out;
  out.label_a = a.source_label();
  out.label_b = b.source_label();

  std::map<std::string, ContrastSubgraph::Vertex> vertices;
  auto touch = [&](const std::string& id) -> ContrastSubgraph::Vertex& {
    auto [it, inserted] = vertices.try_emplace(id);
    if (inserted) {
      it->second.id = id;
      if (auto w = a.vertices().find(id); w != a.vertices().end()) {
        it->second.weight_a = w->second;
      }
      if (auto w = b.vertices().find(id); w != b.vertices().end()) {
        it->second.weight_b = w->second;
      }
    }
    return it->second;
  };

  std::map<EdgeKey, ContrastSubgraph::Edge> edges;
  auto add_edge = [&](const EdgeKey& key, bool contrast) {
    const EdgeAttrs* ea = a.FindEdge(key.u, key.v);
    const EdgeAttrs* eb = b.FindEdge(key.u, key.v);
    if (ea == nullptr || eb == nullptr) {
      throw InvariantError("contrast item refers to a non-shared edge");
    }
    ContrastSubgraph::Edge& e = edges[key];
    e.pair = key;
    e.frequency_a = ea->frequency;
    e.frequency_b = eb->frequency;
    e.polarity_a = ea->polarity;
    e.polarity_b = eb->polarity;
    e.subjectivity_a = ea->subjectivity;
    e.subjectivity_b = eb->subjectivity;
    e.contrast_edge = e.contrast_edge || contrast;
    touch(key.u);
    touch(key.v);
  };

  for (const ContrastEdge& item : edge_items) add_edge(item.pair, true);

  std::set<std::string> contrast_ids;
  for (const ContrastVertex& item : vertex_items) {
    ContrastSubgraph::Vertex& v = touch(item.entity);
    v.contrast_score = item.contrast_score;
    v.lean = item.lean;
    contrast_ids.insert(item.entity);
  }
  for (auto x = contrast_ids.begin(); x != contrast_ids.end(); ++x) {
    for (auto y = std::next(x); y != contrast_ids.end(); ++y) {
      if (a.FindEdge(*x, *y) != nullptr && b.FindEdge(*x, *y) != nullptr) {
        add_edge(EdgeKey::Of(*x, *y), false);
      }
    }
  }

  for (auto& [id, v] : vertices) out.vertices.push_back(std::move(v));
  for (auto& [key, e] : edges) out.edges.push_back(std::move(e));
  return out;
}

ordered_json ContrastReportJson(const KnowledgeGraph& a,
                                const KnowledgeGraph& b,
                                const std::vector<ContrastEdge>& edge_items,
                                const std::vector<ContrastVertex>& vertex_items,
                                const ContrastEdgeOptions& edge_options,
                                const ContrastVertexOptions& vertex_options) {
  ordered_json config;
  config["tool"] = kToolName;
  config["version"] = kToolVersion;
  config["source_a"] = a.source_label();
  config["source_b"] = b.source_label();
  config["min_freq"] = edge_options.min_freq;
  config["min_abs_pol"] = edge_options.min_abs_pol;
  config["min_degree"] = vertex_options.min_degree;
  config["top_k"] = vertex_options.top_k;
  config["build_config_a"] = a.build_config();
  config["build_config_b"] = b.build_config();

  const Alignment alignment = Align(a, b);
  ordered_json j;
  j["config"] = std::move(config);
  j["shared_vertices"] = alignment.shared_vertices.size();
  j["shared_edges"] = alignment.shared_edges.size();

  ordered_json edges = ordered_json::array();
  for (const ContrastEdge& e : edge_items) {
    ordered_json item;
    item["u"] = e.pair.u;
    item["v"] = e.pair.v;
    item["polarity_a"] = e.polarity_a;
    item["polarity_b"] = e.polarity_b;
    item["freq_a"] = e.frequency_a;
    item["freq_b"] = e.frequency_b;
    edges.push_back(std::move(item));
  }
  j["edge_items"] = std::move(edges);

  ordered_json vertices = ordered_json::array();
  for (const ContrastVertex& v : vertex_items) {
    ordered_json item;
    item["entity"] = v.entity;
    item["avg_adj_polarity_a"] = v.avg_adj_polarity_a;
    item["avg_adj_polarity_b"] = v.avg_adj_polarity_b;
    item["contrast_score"] = v.contrast_score;
    item["lean"] = ToString(v.lean);
    vertices.push_back(std::move(item));
  }
  j["vertex_items"] = std::move(vertices);
  return j;
}

}  // namespace mediakg
