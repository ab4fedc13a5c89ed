#include "mediakg/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "mediakg/errors.h"
#include "mediakg/indexed_graph.h"
#include "mediakg/parallel.h"

namespace mediakg {
namespace {

using nlohmann::ordered_json;

struct BfsResult {
  int eccentricity = 0;
  int64_t distance_sum = 0;
};

BfsResult Bfs(const IndexedGraph& g, uint32_t source,
              std::vector<int>& dist, std::vector<uint32_t>& queue) {
  BfsResult r;
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    const uint32_t v = queue[head];
    for (const auto& arc : g.adjacency[v]) {
      if (dist[arc.to] >= 0) continue;
      dist[arc.to] = dist[v] + 1;
      r.eccentricity = std::max(r.eccentricity, dist[arc.to]);
      r.distance_sum += dist[arc.to];
      queue.push_back(arc.to);
    }
  }
  for (uint32_t v : queue) dist[v] = -1;
  return r;
}

ordered_json HistogramJson(const Histogram& h) {
  ordered_json j;
  j["lo"] = h.lo;
  j["hi"] = h.hi;
  j["bins"] = h.counts.size();
  j["counts"] = h.counts;
  return j;
}

}  // namespace

PathStats EccentricityStats(const KnowledgeGraph& graph, int threads) {
  if (graph.empty()) {
    throw InputError("path statistics are undefined for an empty graph");
  }
  const IndexedGraph g = IndexedGraph::From(graph, IndexedGraph::Weights::kUnit);
  const Components comps = ConnectedComponents(g);

  std::vector<size_t> edges_in(comps.members.size(), 0);
  for (size_t v = 0; v < g.size(); ++v) {
    edges_in[comps.component[v]] += g.adjacency[v].size();
  }
  for (auto& e : edges_in) e /= 2;

  // Components are numbered by smallest member, so a lower id wins ties.
  size_t best = 0;
  for (size_t c = 1; c < comps.members.size(); ++c) {
    const size_t n = comps.members[c].size(), bn = comps.members[best].size();
    if (n > bn || (n == bn && edges_in[c] > edges_in[best])) best = c;
  }

  PathStats stats;
  for (const auto& m : comps.members) stats.component_sizes.push_back(m.size());
  std::sort(stats.component_sizes.rbegin(), stats.component_sizes.rend());
  const std::vector<uint32_t>& members = comps.members[best];
  stats.component_vertices = members.size();
  stats.component_edges = edges_in[best];

  std::vector<BfsResult> per_source(members.size());
  const int workers = std::max(1, threads);
  const size_t chunks = std::min<size_t>(members.size(), workers);
  ParallelFor(chunks, workers, [&](size_t chunk) {
    std::vector<int> dist(g.size(), -1);
    std::vector<uint32_t> queue;
    for (size_t i = chunk; i < members.size(); i += chunks) {
      per_source[i] = Bfs(g, members[i], dist, queue);
    }
  });

  stats.radius = per_source.front().eccentricity;
  stats.diameter = per_source.front().eccentricity;
  int64_t ordered_sum = 0;
  for (const BfsResult& r : per_source) {
    stats.radius = std::min(stats.radius, r.eccentricity);
    stats.diameter = std::max(stats.diameter, r.eccentricity);
    ordered_sum += r.distance_sum;
  }
  const auto n = static_cast<int64_t>(members.size());
  stats.distance_sum = ordered_sum / 2;
  stats.pair_count = n * (n - 1) / 2;
  stats.avg_path_length_defined = stats.pair_count > 0;
  stats.avg_path_length =
      stats.avg_path_length_defined
          ? static_cast<double>(stats.distance_sum) /
                static_cast<double>(stats.pair_count)
          : 0.0;
  return stats;
}

Histogram::Histogram(double lo, double hi, size_t bins)
    : lo(lo), hi(hi), counts(bins, 0) {}

double Histogram::bin_upper(size_t i) const {
  if (i + 1 == counts.size()) return hi;
  return lo + (hi - lo) * static_cast<double>(i + 1) /
                  static_cast<double>(counts.size());
}

void Histogram::Add(double x) {
  const size_t bins = counts.size();
  const double t = (x - lo) * static_cast<double>(bins) / (hi - lo);
  long idx = static_cast<long>(std::ceil(t)) - 1;
  idx = std::clamp<long>(idx, 0, static_cast<long>(bins) - 1);
  // Settle values sitting on a boundary against the reported bin edges.
  while (idx > 0 && x <= bin_upper(idx - 1)) --idx;
  while (idx + 1 < static_cast<long>(bins) && x > bin_upper(idx)) ++idx;
  ++counts[idx];
}

int64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), int64_t{0});
}

std::vector<double> FractionalRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 (0-based) share rank mean((i+1)..j).
    const double rank = static_cast<double>(i + 1 + j) / 2.0;
    for (size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

std::optional<double> SpearmanCorrelation(std::span<const double> x,
                                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvariantError("Spearman inputs differ in length");
  }
  if (x.size() < 2) return std::nullopt;
  const auto rx = FractionalRanks(x);
  const auto ry = FractionalRanks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SentimentStats ComputeSentimentStats(const KnowledgeGraph& graph) {
  if (graph.edge_count() == 0) {
    throw InputError("sentiment statistics need at least one edge");
  }
  SentimentStats stats;
  std::vector<double> polarity, subjectivity;
  polarity.reserve(graph.edge_count());
  subjectivity.reserve(graph.edge_count());
  for (const auto& [key, attrs] : graph.edges()) {
    polarity.push_back(attrs.polarity);
    subjectivity.push_back(attrs.subjectivity);
    stats.polarity_histogram.Add(attrs.polarity);
    stats.subjectivity_histogram.Add(attrs.subjectivity);
  }
  const double n = static_cast<double>(graph.edge_count());
  stats.avg_polarity = std::accumulate(polarity.begin(), polarity.end(), 0.0) / n;
  stats.avg_subjectivity =
      std::accumulate(subjectivity.begin(), subjectivity.end(), 0.0) / n;
  stats.spearman_pol_subj = SpearmanCorrelation(polarity, subjectivity);
  return stats;
}

GraphSummary Summarize(const KnowledgeGraph& graph,
                       const SummaryOptions& options) {
  GraphSummary summary;
  summary.vertex_count = graph.vertex_count();
  summary.edge_count = graph.edge_count();
  if (!graph.empty()) summary.paths = EccentricityStats(graph, options.threads);
  if (graph.edge_count() > 0) {
    summary.communities = Louvain(graph, options.weights, options.seed);
    summary.sentiment = ComputeSentimentStats(graph);
  }
  return summary;
}

ordered_json SummaryToJson(const KnowledgeGraph& graph,
                           const GraphSummary& summary,
                           const SummaryOptions& options) {
  ordered_json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["source_label"] = graph.source_label();
  meta["build_config"] = graph.build_config();
  ordered_json metrics_config;
  metrics_config["weight_source"] = ToString(options.weights);
  metrics_config["seed"] = options.seed;
  metrics_config["distance"] = "hops";
  metrics_config["component"] = "largest";
  meta["metrics_config"] = std::move(metrics_config);

  ordered_json j;
  j["meta"] = std::move(meta);
  j["vertex_count"] = summary.vertex_count;
  j["edge_count"] = summary.edge_count;

  if (summary.paths) {
    const PathStats& p = *summary.paths;
    j["component_count"] = p.component_sizes.size();
    j["component_sizes"] = p.component_sizes;
    j["largest_component"] = {{"vertices", p.component_vertices},
                              {"edges", p.component_edges}};
    j["radius"] = p.radius;
    j["diameter"] = p.diameter;
    j["avg_path_length"] = p.avg_path_length_defined
                               ? ordered_json(p.avg_path_length)
                               : ordered_json(nullptr);
    j["avg_path_length_defined"] = p.avg_path_length_defined;
  } else {
    j["component_count"] = 0;
    j["radius"] = nullptr;
    j["diameter"] = nullptr;
    j["avg_path_length"] = nullptr;
    j["avg_path_length_defined"] = false;
  }

  if (summary.communities) {
    j["modularity"] = summary.communities->modularity;
    j["modularity_defined"] = true;
    j["community_count"] = summary.communities->partition.community_count;
  } else {
    j["modularity"] = nullptr;
    j["modularity_defined"] = false;
    j["community_count"] = nullptr;
  }

  if (summary.sentiment) {
    const SentimentStats& s = *summary.sentiment;
    j["avg_polarity"] = s.avg_polarity;
    j["avg_subjectivity"] = s.avg_subjectivity;
    j["spearman_pol_subj"] = s.spearman_pol_subj
                                 ? ordered_json(*s.spearman_pol_subj)
                                 : ordered_json(nullptr);
    j["spearman_defined"] = s.spearman_pol_subj.has_value();
    j["polarity_histogram"] = HistogramJson(s.polarity_histogram);
    j["subjectivity_histogram"] = HistogramJson(s.subjectivity_histogram);
  } else {
    j["avg_polarity"] = nullptr;
    j["avg_subjectivity"] = nullptr;
    j["spearman_pol_subj"] = nullptr;
    j["spearman_defined"] = false;
  }
  return j;
}

void WriteHistogramCsv(const Histogram& histogram, std::ostream& out) {
  out << "bin_lower,bin_upper,count\r\n";
  for (size_t i = 0; i < histogram.counts.size(); ++i) {
    const double lower = i == 0 ? histogram.lo : histogram.bin_upper(i - 1);
    out << ordered_json(lower).dump() << ','
        << ordered_json(histogram.bin_upper(i)).dump() << ','
        << histogram.counts[i] << "\r\n";
  }
}

}  // namespace mediakg
