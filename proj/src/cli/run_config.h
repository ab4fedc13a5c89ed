#ifndef MEDIAKG_CLI_RUN_CONFIG_H_
#define MEDIAKG_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mediakg::cli {

// Every setting of every subcommand in one record. Each subcommand reads the
// fields it needs; Validate() checks ranges once, before any work is done.
struct RunConfig {
  // Global.
  uint64_t seed = 0;
  int threads = 1;

  // Inputs/outputs.
  std::string corpus;
  std::string annotations;
  std::string graph;
  std::string graph_a;
  std::string graph_b;
  std::string output;
  std::string subgraph_output;
  std::string histogram_prefix;
  std::string partition_output;

  // ingest / annotate
  std::optional<std::string> source_label;
  bool include_title = true;
  std::string annotate_mode = "builtin";
  std::string lexicon;  // empty: bundled default

  // build-graph / aliases
  int64_t min_parent_freq = 10;
  int64_t min_child_freq = 2;
  std::string blocklist;
  std::string edge_mode = "auto";
  std::string admission = "intersection";
  int64_t min_vertex_weight = 1;
  int64_t min_edge_freq = 1;

  // metrics
  std::string weight = "frequency";

  // contrast
  int64_t min_freq = 3;
  double min_abs_pol = 0.05;
  int64_t min_degree = 3;
  int64_t top_k = 20;

  // export
  std::string format = "gexf";
  std::string color_by = "none";
  bool no_attrs = false;
  std::optional<std::string> stamp;

  // Throws InputError naming the offending setting.
  void Validate() const;

  // Settings that can influence `command`'s output. Paths are reduced to
  // file names and the thread count is left out, so the echo is identical
  // across output directories and worker counts.
  nlohmann::ordered_json Echo(std::string_view command) const;
};

// key=value lines; '#' and ';' start comments, [section] headers are
// ignored, and surrounding quotes on values are stripped. Keys use the long
// flag names without dashes. Throws InputError with a line number.
std::vector<std::pair<std::string, std::string>> ParseConfigFile(
    const std::filesystem::path& path);

}  // namespace mediakg::cli

#endif  // MEDIAKG_CLI_RUN_CONFIG_H_
