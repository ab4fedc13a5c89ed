#ifndef MEDIAKG_METRICS_H_
#define MEDIAKG_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mediakg/graph.h"

namespace mediakg {

// Hop-distance statistics of the largest connected component (most
// vertices; ties go to more edges, then to the lexicographically smallest
// member).
struct PathStats {
  int radius = 0;
  int diameter = 0;
  // Mean over unordered vertex pairs of the component; equals
  // distance_sum / pair_count. Reported as 0 with `avg_path_length_defined`
  // false when the component has a single vertex.
  double avg_path_length = 0.0;
  bool avg_path_length_defined = false;
  int64_t distance_sum = 0;
  int64_t pair_count = 0;

  size_t component_vertices = 0;
  size_t component_edges = 0;
  // Census of all components, largest first.
  std::vector<size_t> component_sizes;
};

// Throws InputError on an empty graph.
PathStats EccentricityStats(const KnowledgeGraph& graph, int threads = 1);

enum class WeightSource { kFrequency, kUnit };

std::string_view ToString(WeightSource source);
std::optional<WeightSource> ParseWeightSource(std::string_view text);

// Community id per vertex name. Ids are 0..community_count-1, numbered by
// the lexicographically first member of each community.
struct Partition {
  std::map<std::string, int, std::less<>> community;
  int community_count = 0;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Renumbers arbitrary labels into the canonical Partition numbering.
Partition MakePartition(const std::map<std::string, int, std::less<>>& labels);

// Q = 1/(2m) * sum_ij [A_ij - k_i k_j / (2m)] delta(c_i, c_j).
// Throws InputError if a vertex has no community or the graph has no edges.
double ModularityOf(const KnowledgeGraph& graph, const Partition& partition,
                    WeightSource weights);

struct LouvainResult {
  Partition partition;
  double modularity = 0.0;
  // Q of the original graph after each aggregation level of the winning run;
  // entry 0 is the all-singletons partition.
  std::vector<double> level_modularity;
};

// Two-phase Louvain (local moving + aggregation). Vertices are visited in a
// seeded pseudorandom order on each pass; a vertex moves only when that
// raises Q by more than 1e-9. The best of 8 runs drawn from one seeded
// stream is returned. Deterministic for a given seed on every platform.
// Throws InputError on an edgeless graph.
LouvainResult Louvain(const KnowledgeGraph& graph, WeightSource weights,
                      uint64_t seed);

// Right-closed fixed-width bins over [lo, hi]; the first bin also holds lo.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<int64_t> counts;

  Histogram(double lo, double hi, size_t bins);
  void Add(double x);
  int64_t total() const;
  double bin_upper(size_t i) const;
};

// Average ranks, 1-based; tied values share the mean of their positions.
std::vector<double> FractionalRanks(std::span<const double> values);

// Pearson correlation of fractional ranks. nullopt when fewer than two
// values or when either side is constant.
std::optional<double> SpearmanCorrelation(std::span<const double> x,
                                          std::span<const double> y);

struct SentimentStats {
  double avg_polarity = 0.0;
  double avg_subjectivity = 0.0;
  std::optional<double> spearman_pol_subj;
  Histogram polarity_histogram{-1.0, 1.0, 40};
  Histogram subjectivity_histogram{0.0, 1.0, 20};
};

// Unweighted per-edge averages, Spearman and histograms. Throws InputError
// on an edgeless graph.
SentimentStats ComputeSentimentStats(const KnowledgeGraph& graph);

struct SummaryOptions {
  WeightSource weights = WeightSource::kFrequency;
  uint64_t seed = 0;
  int threads = 1;
};

// Everything `metrics` reports. Parts that need edges are absent for an
// edgeless graph; everything is absent for an empty one.
struct GraphSummary {
  size_t vertex_count = 0;
  size_t edge_count = 0;
  std::optional<PathStats> paths;
  std::optional<LouvainResult> communities;
  std::optional<SentimentStats> sentiment;
};

GraphSummary Summarize(const KnowledgeGraph& graph,
                       const SummaryOptions& options);

// JSON summary with a "meta" block echoing the graph build config and the
// metric options. Undefined values are null with a "*_defined" flag.
nlohmann::ordered_json SummaryToJson(const KnowledgeGraph& graph,
                                     const GraphSummary& summary,
                                     const SummaryOptions& options);

// CSV rows `bin_lower,bin_upper,count`.
void WriteHistogramCsv(const Histogram& histogram, std::ostream& out);

}  // namespace mediakg

#endif  // MEDIAKG_METRICS_H_
