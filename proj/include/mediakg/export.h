#ifndef MEDIAKG_EXPORT_H_
#define MEDIAKG_EXPORT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mediakg/contrast.h"
#include "mediakg/graph.h"
#include "mediakg/metrics.h"

namespace mediakg {

enum class ExportFormat { kGexf, kGraphMl, kDot, kCsvEdges, kCsvVertices, kJsonNative };
enum class ColorBy { kNone, kCommunity, kLean };

std::string_view ToString(ExportFormat format);
std::optional<ExportFormat> ParseExportFormat(std::string_view text);
std::string_view ToString(ColorBy color_by);
std::optional<ColorBy> ParseColorBy(std::string_view text);

struct ExportSpec {
  ExportFormat format = ExportFormat::kGexf;
  // Without attributes only structure, labels, edge weights and colors are
  // written.
  bool include_attrs = true;
  ColorBy color_by = ColorBy::kNone;
  // Echoed into the file header where the format has one (GEXF/GraphML
  // description, DOT comment, JSON meta).
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  // ISO date written as a modification stamp; unset keeps output
  // byte-identical across runs.
  std::optional<std::string> stamp;
};

enum class AttrType { kLong, kDouble, kString, kBool };
using AttrValue = std::variant<int64_t, double, std::string, bool>;

struct AttrDef {
  std::string name;
  AttrType type;
};

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  std::string Hex() const;
};

// Format-neutral graph with typed attributes; what the writers consume.
struct AttributedGraph {
  struct Vertex {
    std::string id;
    std::vector<std::optional<AttrValue>> values;  // parallel to vertex_attrs
    std::optional<Rgb> color;
  };
  struct Edge {
    std::string source;
    std::string target;
    double weight = 1.0;
    std::vector<std::optional<AttrValue>> values;  // parallel to edge_attrs
    std::optional<Rgb> color;
  };

  std::string label;
  std::vector<AttrDef> vertex_attrs;
  std::vector<AttrDef> edge_attrs;
  std::vector<Vertex> vertices;  // sorted by id
  std::vector<Edge> edges;       // sorted by (source, target)
};

// Vertex attrs: weight[, community]; edge attrs: frequency, polarity,
// subjectivity; edge weight = frequency. Throws InputError for
// color_by=community without a partition and for color_by=lean.
AttributedGraph ToAttributed(const KnowledgeGraph& graph,
                             const Partition* partition, ColorBy color_by);

// Vertex attrs: weight_a, weight_b, contrast_score, lean; edge attrs:
// frequency/polarity/subjectivity per source and contrast_edge. Lean colors
// are red for A and blue for B. Throws InputError for color_by=community.
AttributedGraph ToAttributed(const ContrastSubgraph& subgraph, ColorBy color_by);

// Writes any format except kJsonNative (which only exists for
// KnowledgeGraph); throws InputError for it.
void WriteAttributed(const AttributedGraph& graph, const ExportSpec& spec,
                     std::ostream& out);

// Element order is sorted (vertices by name, edges by endpoint pair), so
// equal inputs give byte-identical files. Throws InputError if the path is
// not writable or the format/attribute combination is unsupported.
void ExportGraph(const KnowledgeGraph& graph, const Partition* partition,
                 const ExportSpec& spec, const std::filesystem::path& path);
void ExportGraph(const KnowledgeGraph& graph, const Partition* partition,
                 const ExportSpec& spec, std::ostream& out);
void ExportContrastSubgraph(const ContrastSubgraph& subgraph,
                            const ExportSpec& spec,
                            const std::filesystem::path& path);
void ExportContrastSubgraph(const ContrastSubgraph& subgraph,
                            const ExportSpec& spec, std::ostream& out);

}  // namespace mediakg

#endif  // MEDIAKG_EXPORT_H_
