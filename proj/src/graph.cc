#include "mediakg/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "mediakg/errors.h"
#include "mediakg/parallel.h"
#include "mediakg/text.h"

namespace mediakg {
namespace {

using nlohmann::ordered_json;

constexpr size_t kMaxWarnedSurfaces = 10;

// Sentence-level sentiment values supporting one edge. Values are summed in
// sorted order at finalization so the mean is independent of the order in
// which contributions arrived.
struct EdgeSupport {
  std::vector<double> polarity;
  std::vector<double> subjectivity;
};

struct PartialGraph {
  std::map<std::string, int64_t, std::less<>> vertices;
  std::map<EdgeKey, EdgeSupport> edges;
  std::set<std::string> unknown_surfaces;
};

double SortedMean(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  const double mean = sum / static_cast<double>(values.size());
  // Rounding can push the mean a hair outside the support range.
  return std::clamp(mean, values.front(), values.back());
}

void AccumulateSentence(const SentenceAnnotation& ann, const AliasTable& table,
                        const BuildGraphOptions& options, EdgeMode mode,
                        PartialGraph& out) {
  const std::set<std::string> admitted =
      AdmissibleEntities(ann, options.admission, options.relations_extracted);
  std::map<std::string, std::string> canon_of;  // surface -> canonical
  std::set<std::string> present;
  for (const std::string& surface : admitted) {
    if (auto c = table.Canonicalize(surface)) {
      present.insert(*c);
      canon_of.emplace(surface, std::move(*c));
    } else if (!table.Knows(surface)) {
      out.unknown_surfaces.insert(surface);
    }
  }
  for (const std::string& c : present) out.vertices[c] += 1;

  auto contribute = [&](const EdgeKey& key) {
    EdgeSupport& support = out.edges[key];
    support.polarity.push_back(ann.polarity);
    support.subjectivity.push_back(ann.subjectivity);
  };

  if (mode == EdgeMode::kSentenceCooccurrence) {
    for (auto a = present.begin(); a != present.end(); ++a) {
      for (auto b = std::next(a); b != present.end(); ++b) {
        contribute(EdgeKey{*a, *b});
      }
    }
    return;
  }
  for (const RelationMention& rel : ann.relations) {
    const std::string arg0 = NormalizeSurface(rel.arg0);
    const std::string arg1 = NormalizeSurface(rel.arg1);
    std::set<std::string> left, right;
    for (const auto& [surface, canonical] : canon_of) {
      if (ContainsTokenRun(arg0, surface)) left.insert(canonical);
      if (ContainsTokenRun(arg1, surface)) right.insert(canonical);
    }
    std::set<EdgeKey> pairs;
    for (const std::string& x : left) {
      for (const std::string& y : right) {
        if (x != y) pairs.insert(EdgeKey::Of(x, y));
      }
    }
    for (const EdgeKey& key : pairs) contribute(key);
  }
}

[[noreturn]] void Fail(std::string_view name, const std::string& message) {
  throw InputError(std::string(name) + ": " + message);
}

}  // namespace

EdgeKey EdgeKey::Of(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  return EdgeKey{std::string(a), std::string(b)};
}

void KnowledgeGraph::AddVertex(const std::string& name, int64_t weight) {
  vertices_[name] += weight;
}

void KnowledgeGraph::SetEdge(const EdgeKey& key, const EdgeAttrs& attrs) {
  if (!(key.u < key.v)) {
    throw InvariantError("edge key must be ordered and loop-free: " + key.u +
                         " -- " + key.v);
  }
  if (!vertices_.contains(key.u) || !vertices_.contains(key.v)) {
    throw InvariantError("edge endpoint missing: " + key.u + " -- " + key.v);
  }
  edges_[key] = attrs;
}

const EdgeAttrs* KnowledgeGraph::FindEdge(std::string_view a,
                                          std::string_view b) const {
  auto it = edges_.find(EdgeKey::Of(a, b));
  return it == edges_.end() ? nullptr : &it->second;
}

void KnowledgeGraph::Validate() const {
  for (const auto& [name, weight] : vertices_) {
    if (weight < 1) throw InvariantError("vertex '" + name + "' has weight < 1");
  }
  for (const auto& [key, attrs] : edges_) {
    const std::string label = key.u + " -- " + key.v;
    if (!(key.u < key.v)) throw InvariantError("unordered or loop edge " + label);
    if (!vertices_.contains(key.u) || !vertices_.contains(key.v)) {
      throw InvariantError("dangling edge " + label);
    }
    if (attrs.frequency < 1) throw InvariantError("edge " + label + " frequency < 1");
    if (!(attrs.polarity >= -1.0 && attrs.polarity <= 1.0) ||
        !(attrs.subjectivity >= 0.0 && attrs.subjectivity <= 1.0)) {
      throw InvariantError("edge " + label + " sentiment out of range");
    }
  }
}

std::string_view ToString(EdgeMode mode) {
  switch (mode) {
    case EdgeMode::kAuto:
      return "auto";
    case EdgeMode::kSentenceCooccurrence:
      return "sentence_cooccurrence";
    case EdgeMode::kRelationPair:
      return "relation_pair";
  }
  return "auto";
}

std::optional<EdgeMode> ParseEdgeMode(std::string_view text) {
  if (text == "auto") return EdgeMode::kAuto;
  if (text == "sentence_cooccurrence" || text == "sentence") {
    return EdgeMode::kSentenceCooccurrence;
  }
  if (text == "relation_pair" || text == "relation") return EdgeMode::kRelationPair;
  return std::nullopt;
}

MentionCounts CountAdmissibleMentions(
    std::span<const SentenceAnnotation> annotations, AdmissionMode admission,
    bool relations_extracted) {
  MentionCounts counts;
  for (const SentenceAnnotation& ann : annotations) {
    for (const std::string& s :
         AdmissibleEntities(ann, admission, relations_extracted)) {
      auto it = counts.find(s);
      if (it == counts.end()) {
        counts.emplace(s, 1);
      } else {
        ++it->second;
      }
    }
  }
  return counts;
}

BuildGraphResult BuildGraph(std::span<const SentenceAnnotation> annotations,
                            const AliasTable& table,
                            const BuildGraphOptions& options) {
  BuildGraphResult result;
  EdgeMode mode = options.edge_mode;
  if (mode == EdgeMode::kAuto) {
    const bool any_relations =
        std::any_of(annotations.begin(), annotations.end(),
                    [](const auto& a) { return !a.relations.empty(); });
    mode = any_relations ? EdgeMode::kRelationPair
                         : EdgeMode::kSentenceCooccurrence;
  }
  result.resolved_edge_mode = mode;

  const size_t shards =
      std::max<size_t>(1, std::min<size_t>(annotations.size(),
                                           std::max(options.threads, 1)));
  std::vector<PartialGraph> partials(shards);
  ParallelFor(shards, options.threads, [&](size_t shard) {
    const size_t begin = annotations.size() * shard / shards;
    const size_t end = annotations.size() * (shard + 1) / shards;
    for (size_t i = begin; i < end; ++i) {
      AccumulateSentence(annotations[i], table, options, mode, partials[shard]);
    }
  });

  PartialGraph merged = std::move(partials.front());
  for (size_t s = 1; s < partials.size(); ++s) {
    for (auto& [name, weight] : partials[s].vertices) merged.vertices[name] += weight;
    for (auto& [key, support] : partials[s].edges) {
      EdgeSupport& target = merged.edges[key];
      target.polarity.insert(target.polarity.end(), support.polarity.begin(),
                             support.polarity.end());
      target.subjectivity.insert(target.subjectivity.end(),
                                 support.subjectivity.begin(),
                                 support.subjectivity.end());
    }
    merged.unknown_surfaces.merge(partials[s].unknown_surfaces);
  }

  KnowledgeGraph& g = result.graph;
  g.set_source_label(options.source_label);
  for (const auto& [name, weight] : merged.vertices) g.AddVertex(name, weight);
  for (auto& [key, support] : merged.edges) {
    EdgeAttrs attrs;
    attrs.frequency = static_cast<int64_t>(support.polarity.size());
    attrs.polarity = SortedMean(support.polarity);
    attrs.subjectivity = SortedMean(support.subjectivity);
    g.SetEdge(key, attrs);
  }

  auto& config = g.build_config();
  config["edge_mode"] = ToString(mode);
  config["admission_mode"] = ToString(options.admission);
  config["relations_extracted"] = options.relations_extracted;
  config["min_parent_freq"] = table.options().min_parent_freq;
  config["min_child_freq"] = table.options().min_child_freq;
  config["blocklist_size"] = table.options().blocklist.size();
  config["annotated_sentences"] = annotations.size();

  if (!merged.unknown_surfaces.empty()) {
    std::string message = std::to_string(merged.unknown_surfaces.size()) +
                          " admitted surface(s) missing from the alias table:";
    size_t shown = 0;
    for (const std::string& s : merged.unknown_surfaces) {
      if (shown++ == kMaxWarnedSurfaces) {
        message += " ...";
        break;
      }
      message += " '" + s + "'";
    }
    result.warnings.push_back(std::move(message));
  }
  return result;
}

KnowledgeGraph FilterGraph(const KnowledgeGraph& graph,
                           int64_t min_vertex_weight, int64_t min_edge_freq) {
  if (min_vertex_weight < 1 || min_edge_freq < 1) {
    throw InputError("min_vertex_weight and min_edge_freq must be >= 1");
  }
  std::set<std::string, std::less<>> had_edges;
  for (const auto& [key, attrs] : graph.edges()) {
    had_edges.insert(key.u);
    had_edges.insert(key.v);
  }
  std::set<std::string, std::less<>> kept;
  for (const auto& [name, weight] : graph.vertices()) {
    if (weight >= min_vertex_weight) kept.insert(name);
  }
  std::map<EdgeKey, EdgeAttrs> kept_edges;
  std::set<std::string, std::less<>> has_edges;
  for (const auto& [key, attrs] : graph.edges()) {
    if (attrs.frequency < min_edge_freq) continue;
    if (!kept.contains(key.u) || !kept.contains(key.v)) continue;
    kept_edges.emplace(key, attrs);
    has_edges.insert(key.u);
    has_edges.insert(key.v);
  }
  KnowledgeGraph out(graph.source_label());
  out.build_config() = graph.build_config();
  for (const auto& [name, weight] : graph.vertices()) {
    if (!kept.contains(name)) continue;
    if (had_edges.contains(name) && !has_edges.contains(name)) continue;
    out.AddVertex(name, weight);
  }
  for (const auto& [key, attrs] : kept_edges) out.SetEdge(key, attrs);
  out.build_config()["min_vertex_weight"] = min_vertex_weight;
  out.build_config()["min_edge_freq"] = min_edge_freq;
  return out;
}

void WriteGraphJson(const KnowledgeGraph& graph, std::ostream& out,
                    const ordered_json& extra_meta) {
  ordered_json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["source_label"] = graph.source_label();
  meta["build_config"] = graph.build_config();
  if (extra_meta.is_object()) {
    for (const auto& [key, value] : extra_meta.items()) meta[key] = value;
  }
  out << "{\"meta\":" << meta.dump() << ",\n\"vertices\":[";
  bool first = true;
  for (const auto& [name, weight] : graph.vertices()) {
    ordered_json v;
    v["id"] = name;
    v["weight"] = weight;
    out << (first ? "\n" : ",\n") << v.dump();
    first = false;
  }
  out << "\n],\n\"edges\":[";
  first = true;
  for (const auto& [key, attrs] : graph.edges()) {
    ordered_json e;
    e["source"] = key.u;
    e["target"] = key.v;
    e["frequency"] = attrs.frequency;
    e["polarity"] = attrs.polarity;
    e["subjectivity"] = attrs.subjectivity;
    out << (first ? "\n" : ",\n") << e.dump();
    first = false;
  }
  out << "\n]}\n";
}

KnowledgeGraph ReadGraphJson(std::istream& in, std::string_view name) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    Fail(name, std::string("malformed graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("meta") || !doc.contains("vertices") ||
      !doc.contains("edges")) {
    Fail(name, "graph file needs 'meta', 'vertices' and 'edges'");
  }
  const ordered_json& meta = doc["meta"];
  if (!meta.is_object()) Fail(name, "'meta' must be an object");
  KnowledgeGraph g;
  if (auto it = meta.find("source_label"); it != meta.end() && it->is_string()) {
    g.set_source_label(*it);
  }
  if (auto it = meta.find("build_config"); it != meta.end()) {
    if (!it->is_object()) Fail(name, "'build_config' must be an object");
    g.build_config() = *it;
  }
  if (!doc["vertices"].is_array() || !doc["edges"].is_array()) {
    Fail(name, "'vertices' and 'edges' must be arrays");
  }
  size_t index = 0;
  for (const ordered_json& v : doc["vertices"]) {
    const std::string where = "vertex #" + std::to_string(index++);
    if (!v.is_object() || !v.contains("id") || !v["id"].is_string() ||
        !v.contains("weight") || !v["weight"].is_number_integer()) {
      Fail(name, where + " needs string 'id' and integer 'weight'");
    }
    const std::string id = v["id"];
    const int64_t weight = v["weight"];
    if (weight < 1) Fail(name, where + " ('" + id + "') has weight < 1");
    if (g.vertices().contains(id)) Fail(name, "duplicate vertex '" + id + "'");
    g.AddVertex(id, weight);
  }
  index = 0;
  for (const ordered_json& e : doc["edges"]) {
    const std::string where = "edge #" + std::to_string(index++);
    if (!e.is_object()) Fail(name, where + " must be an object");
    for (const char* key : {"source", "target"}) {
      if (!e.contains(key) || !e[key].is_string()) {
        Fail(name, where + " needs string '" + key + "'");
      }
    }
    if (!e.contains("frequency") || !e["frequency"].is_number_integer()) {
      Fail(name, where + " needs integer 'frequency'");
    }
    for (const char* key : {"polarity", "subjectivity"}) {
      if (!e.contains(key) || !e[key].is_number()) {
        Fail(name, where + " needs numeric '" + key + "'");
      }
    }
    const std::string u = e["source"], v = e["target"];
    EdgeAttrs attrs{e["frequency"].get<int64_t>(), e["polarity"].get<double>(),
                    e["subjectivity"].get<double>()};
    if (u == v) Fail(name, where + " is a self-loop on '" + u + "'");
    if (!g.vertices().contains(u) || !g.vertices().contains(v)) {
      Fail(name, where + " references an unknown vertex");
    }
    if (attrs.frequency < 1) Fail(name, where + " has frequency < 1");
    if (!(attrs.polarity >= -1.0 && attrs.polarity <= 1.0)) {
      Fail(name, where + " polarity out of [-1, 1]");
    }
    if (!(attrs.subjectivity >= 0.0 && attrs.subjectivity <= 1.0)) {
      Fail(name, where + " subjectivity out of [0, 1]");
    }
    const EdgeKey key = EdgeKey::Of(u, v);
    if (g.edges().contains(key)) Fail(name, "duplicate edge " + u + " -- " + v);
    g.SetEdge(key, attrs);
  }
  return g;
}

KnowledgeGraph LoadGraphJson(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open graph file " + path.string());
  return ReadGraphJson(in, path.string());
}

}  // namespace mediakg
