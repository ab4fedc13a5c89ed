#include "cli/run_config.h"

#include <fstream>

#include "mediakg/annotate.h"
#include "mediakg/corpus.h"
#include "mediakg/errors.h"
#include "mediakg/export.h"
#include "mediakg/graph.h"
#include "mediakg/metrics.h"
#include "mediakg/text.h"

namespace mediakg::cli {
namespace {

using nlohmann::ordered_json;

void Require(bool ok, std::string_view message) {
  if (!ok) throw InputError("invalid setting: " + std::string(message));
}

ordered_json FileName(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::filesystem::path(path).filename().string();
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

void RunConfig::Validate() const {
  Require(threads >= 1 && threads <= 1024, "threads must be in [1, 1024]");
  Require(annotate_mode == "builtin" || annotate_mode == "import",
          "mode must be builtin or import");
  Require(min_parent_freq >= 1, "min-parent-freq must be >= 1");
  Require(min_child_freq >= 1, "min-child-freq must be >= 1");
  Require(ParseEdgeMode(edge_mode).has_value(),
          "edge-mode must be auto, sentence_cooccurrence or relation_pair");
  Require(ParseAdmissionMode(admission).has_value(),
          "admission must be intersection or union");
  Require(min_vertex_weight >= 1, "min-vertex-weight must be >= 1");
  Require(min_edge_freq >= 1, "min-edge-freq must be >= 1");
  Require(ParseWeightSource(weight).has_value(),
          "weight must be frequency or unit");
  Require(min_freq >= 1, "min-freq must be >= 1");
  Require(min_abs_pol >= 0.0 && min_abs_pol <= 1.0,
          "min-abs-pol must be in [0, 1]");
  Require(min_degree >= 1, "min-degree must be >= 1");
  Require(top_k >= 1, "top-k must be >= 1");
  Require(ParseExportFormat(format).has_value(),
          "format must be gexf, graphml, dot, csv-edges, csv-vertices or json");
  Require(ParseColorBy(color_by).has_value(),
          "color-by must be none, community or lean");
  if (stamp) {
    Require(ParseIsoDate(*stamp).has_value(), "stamp must be an ISO-8601 date");
  }
  if (source_label) Require(!source_label->empty(), "source-label is empty");
}

ordered_json RunConfig::Echo(std::string_view command) const {
  ordered_json j;
  j["command"] = command;
  if (command == "ingest-check" || command == "annotate") {
    j["corpus"] = FileName(corpus);
    j["source_label"] = source_label ? ordered_json(*source_label) : nullptr;
    j["include_title"] = include_title;
  }
  if (command == "annotate") {
    j["mode"] = annotate_mode;
    j["lexicon"] = lexicon.empty() ? ordered_json("default") : FileName(lexicon);
    if (annotate_mode == "import") j["annotations"] = FileName(annotations);
  }
  if (command == "build-graph" || command == "aliases") {
    j["annotations"] = FileName(annotations);
    j["min_parent_freq"] = min_parent_freq;
    j["min_child_freq"] = min_child_freq;
    j["blocklist"] = FileName(blocklist);
    j["admission"] = admission;
  }
  if (command == "build-graph") {
    j["edge_mode"] = edge_mode;
    j["min_vertex_weight"] = min_vertex_weight;
    j["min_edge_freq"] = min_edge_freq;
  }
  if (command == "metrics" || command == "export") {
    j["graph"] = FileName(graph);
    j["seed"] = seed;
    j["weight"] = weight;
  }
  if (command == "contrast") {
    j["graph_a"] = FileName(graph_a);
    j["graph_b"] = FileName(graph_b);
    j["min_freq"] = min_freq;
    j["min_abs_pol"] = min_abs_pol;
    j["min_degree"] = min_degree;
    j["top_k"] = top_k;
  }
  if (command == "export" || command == "contrast") {
    j["format"] = format;
    j["color_by"] = color_by;
    j["attributes"] = !no_attrs;
    j["stamp"] = stamp ? ordered_json(*stamp) : nullptr;
  }
  return j;
}

std::vector<std::pair<std::string, std::string>> ParseConfigFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[' && line.back() == ']') continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected key=value");
    }
    std::string key(Trim(line.substr(0, eq)));
    std::string_view value = Trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty()) {
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": empty key");
    }
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    out.emplace_back(std::move(key), std::string(value));
  }
  return out;
}

}  // namespace mediakg::cli
