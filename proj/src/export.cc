#include "mediakg/export.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "mediakg/errors.h"

namespace mediakg {
namespace {

using nlohmann::ordered_json;

// Categorical palette for community colors; cycles after 12 communities.
constexpr std::array<Rgb, 12> kPalette = {{{31, 119, 180},
                                           {255, 127, 14},
                                           {44, 160, 44},
                                           {214, 39, 40},
                                           {148, 103, 189},
                                           {140, 86, 75},
                                           {227, 119, 194},
                                           {127, 127, 127},
                                           {188, 189, 34},
                                           {23, 190, 207},
                                           {174, 199, 232},
                                           {255, 187, 120}}};
constexpr Rgb kLeanA{214, 39, 40};   // red
constexpr Rgb kLeanB{31, 119, 180};  // blue
constexpr Rgb kNeutral{160, 160, 160};

std::string FormatDouble(double x) { return ordered_json(x).dump(); }

std::string FormatValue(const AttrValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return FormatDouble(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters other than tab/newline are not legal XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n' &&
            c != '\r') {
          out += ' ';
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string DotQuote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n' || c == '\r') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string_view GexfType(AttrType t) {
  switch (t) {
    case AttrType::kLong: return "long";
    case AttrType::kDouble: return "double";
    case AttrType::kString: return "string";
    case AttrType::kBool: return "boolean";
  }
  return "string";
}

std::string_view GraphMlType(AttrType t) {
  switch (t) {
    case AttrType::kLong: return "long";
    case AttrType::kDouble: return "double";
    case AttrType::kString: return "string";
    case AttrType::kBool: return "boolean";
  }
  return "string";
}

std::string MetaText(const ExportSpec& spec) {
  return spec.meta.empty() ? std::string() : spec.meta.dump();
}

void WriteGexf(const AttributedGraph& g, const ExportSpec& spec,
               std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://gexf.net/1.3\" "
         "xmlns:viz=\"http://gexf.net/1.3/viz\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://gexf.net/1.3 "
         "http://gexf.net/1.3/gexf.xsd\" version=\"1.3\">\n";
  out << "  <meta";
  if (spec.stamp) out << " lastmodifieddate=\"" << XmlEscape(*spec.stamp) << "\"";
  out << ">\n    <creator>" << kToolName << ' ' << kToolVersion
      << "</creator>\n";
  if (const std::string meta = MetaText(spec); !meta.empty()) {
    out << "    <description>" << XmlEscape(meta) << "</description>\n";
  }
  out << "  </meta>\n";
  out << "  <graph defaultedgetype=\"undirected\" mode=\"static\">\n";
  const bool attrs = spec.include_attrs;
  auto write_defs = [&](const char* cls, const std::vector<AttrDef>& defs) {
    if (!attrs || defs.empty()) return;
    out << "    <attributes class=\"" << cls << "\">\n";
    for (size_t i = 0; i < defs.size(); ++i) {
      out << "      <attribute id=\"" << i << "\" title=\""
          << XmlEscape(defs[i].name) << "\" type=\"" << GexfType(defs[i].type)
          << "\"/>\n";
    }
    out << "    </attributes>\n";
  };
  write_defs("node", g.vertex_attrs);
  write_defs("edge", g.edge_attrs);

  auto write_values = [&](const std::vector<std::optional<AttrValue>>& values) {
    if (!attrs) return;
    bool any = false;
    for (const auto& v : values) any = any || v.has_value();
    if (!any) return;
    out << "        <attvalues>\n";
    for (size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) continue;
      out << "          <attvalue for=\"" << i << "\" value=\""
          << XmlEscape(FormatValue(*values[i])) << "\"/>\n";
    }
    out << "        </attvalues>\n";
  };
  auto write_color = [&](const std::optional<Rgb>& c) {
    if (!c) return;
    out << "        <viz:color r=\"" << int{c->r} << "\" g=\"" << int{c->g}
        << "\" b=\"" << int{c->b} << "\"/>\n";
  };

  std::map<std::string_view, size_t> node_index;
  out << "    <nodes>\n";
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    node_index.emplace(v.id, i);
    out << "      <node id=\"n" << i << "\" label=\"" << XmlEscape(v.id)
        << "\">\n";
    write_values(v.values);
    write_color(v.color);
    out << "      </node>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    out << "      <edge id=\"e" << i << "\" source=\"n"
        << node_index.at(e.source) << "\" target=\"n"
        << node_index.at(e.target) << "\" weight=\"" << FormatDouble(e.weight)
        << "\">\n";
    write_values(e.values);
    write_color(e.color);
    out << "      </edge>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

void WriteGraphMl(const AttributedGraph& g, const ExportSpec& spec,
                  std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  std::string desc = MetaText(spec);
  if (spec.stamp) desc += (desc.empty() ? "" : " ") + std::string("stamp=") + *spec.stamp;
  if (!desc.empty()) out << "  <desc>" << XmlEscape(desc) << "</desc>\n";

  // Keys: label, then vertex attrs, color, edge attrs, weight, color.
  out << "  <key id=\"label\" for=\"node\" attr.name=\"label\" "
         "attr.type=\"string\"/>\n";
  const bool attrs = spec.include_attrs;
  if (attrs) {
    for (size_t i = 0; i < g.vertex_attrs.size(); ++i) {
      out << "  <key id=\"v" << i << "\" for=\"node\" attr.name=\""
          << XmlEscape(g.vertex_attrs[i].name) << "\" attr.type=\""
          << GraphMlType(g.vertex_attrs[i].type) << "\"/>\n";
    }
    for (size_t i = 0; i < g.edge_attrs.size(); ++i) {
      out << "  <key id=\"e" << i << "\" for=\"edge\" attr.name=\""
          << XmlEscape(g.edge_attrs[i].name) << "\" attr.type=\""
          << GraphMlType(g.edge_attrs[i].type) << "\"/>\n";
    }
  }
  out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" "
         "attr.type=\"double\"/>\n";
  out << "  <key id=\"color\" for=\"all\" attr.name=\"color\" "
         "attr.type=\"string\"/>\n";
  out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";

  std::map<std::string_view, size_t> node_index;
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    node_index.emplace(v.id, i);
    out << "    <node id=\"n" << i << "\">\n      <data key=\"label\">"
        << XmlEscape(v.id) << "</data>\n";
    if (attrs) {
      for (size_t a = 0; a < v.values.size(); ++a) {
        if (!v.values[a]) continue;
        out << "      <data key=\"v" << a << "\">"
            << XmlEscape(FormatValue(*v.values[a])) << "</data>\n";
      }
    }
    if (v.color) out << "      <data key=\"color\">" << v.color->Hex() << "</data>\n";
    out << "    </node>\n";
  }
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    out << "    <edge id=\"e" << i << "\" source=\"n" << node_index.at(e.source)
        << "\" target=\"n" << node_index.at(e.target) << "\">\n";
    out << "      <data key=\"weight\">" << FormatDouble(e.weight) << "</data>\n";
    if (attrs) {
      for (size_t a = 0; a < e.values.size(); ++a) {
        if (!e.values[a]) continue;
        out << "      <data key=\"e" << a << "\">"
            << XmlEscape(FormatValue(*e.values[a])) << "</data>\n";
      }
    }
    if (e.color) out << "      <data key=\"color\">" << e.color->Hex() << "</data>\n";
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void WriteDot(const AttributedGraph& g, const ExportSpec& spec,
              std::ostream& out) {
  if (const std::string meta = MetaText(spec); !meta.empty()) {
    out << "// " << meta << '\n';
  }
  if (spec.stamp) out << "// stamp: " << *spec.stamp << '\n';
  out << "graph " << DotQuote(g.label.empty() ? "G" : g.label) << " {\n";
  const bool attrs = spec.include_attrs;
  auto attr_list = [&](const std::vector<AttrDef>& defs,
                       const std::vector<std::optional<AttrValue>>& values,
                       const std::optional<Rgb>& color,
                       std::optional<double> weight) {
    std::vector<std::string> parts;
    if (weight) parts.push_back("weight=" + DotQuote(FormatDouble(*weight)));
    if (attrs) {
      for (size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) continue;
        const std::string& name = defs[i].name;
        // "weight" is already the DOT edge weight; keep vertex weights
        // under a distinct name so both survive.
        const std::string key = name == "weight" ? "mentions" : name;
        parts.push_back(key + "=" + DotQuote(FormatValue(*values[i])));
      }
    }
    if (color) parts.push_back("color=" + DotQuote(color->Hex()));
    std::string s;
    if (parts.empty()) return s;
    s = " [";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) s += ", ";
      s += parts[i];
    }
    s += "]";
    return s;
  };
  for (const auto& v : g.vertices) {
    out << "  " << DotQuote(v.id)
        << attr_list(g.vertex_attrs, v.values, v.color, std::nullopt) << ";\n";
  }
  for (const auto& e : g.edges) {
    out << "  " << DotQuote(e.source) << " -- " << DotQuote(e.target)
        << attr_list(g.edge_attrs, e.values, e.color, e.weight) << ";\n";
  }
  out << "}\n";
}

void WriteCsvVertices(const AttributedGraph& g, const ExportSpec& spec,
                      std::ostream& out) {
  const bool attrs = spec.include_attrs;
  out << "id";
  if (attrs) {
    for (const auto& d : g.vertex_attrs) out << ',' << CsvField(d.name);
  }
  const bool colored = spec.color_by != ColorBy::kNone;
  if (colored) out << ",color";
  out << "\r\n";
  for (const auto& v : g.vertices) {
    out << CsvField(v.id);
    if (attrs) {
      for (const auto& value : v.values) {
        out << ',' << (value ? CsvField(FormatValue(*value)) : std::string());
      }
    }
    if (colored) out << ',' << (v.color ? v.color->Hex() : std::string());
    out << "\r\n";
  }
}

void WriteCsvEdges(const AttributedGraph& g, const ExportSpec& spec,
                   std::ostream& out) {
  const bool attrs = spec.include_attrs;
  out << "source,target,weight";
  if (attrs) {
    for (const auto& d : g.edge_attrs) out << ',' << CsvField(d.name);
  }
  out << "\r\n";
  for (const auto& e : g.edges) {
    out << CsvField(e.source) << ',' << CsvField(e.target) << ','
        << FormatDouble(e.weight);
    if (attrs) {
      for (const auto& value : e.values) {
        out << ',' << (value ? CsvField(FormatValue(*value)) : std::string());
      }
    }
    out << "\r\n";
  }
}

void OpenForWrite(const std::filesystem::path& path, std::ofstream& out) {
  out.open(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
}

void CheckWritten(const std::filesystem::path& path, std::ofstream& out) {
  out.flush();
  if (!out) throw InputError("error while writing " + path.string());
}

}  // namespace

std::string Rgb::Hex() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string_view ToString(ExportFormat format) {
  switch (format) {
    case ExportFormat::kGexf: return "gexf";
    case ExportFormat::kGraphMl: return "graphml";
    case ExportFormat::kDot: return "dot";
    case ExportFormat::kCsvEdges: return "csv-edges";
    case ExportFormat::kCsvVertices: return "csv-vertices";
    case ExportFormat::kJsonNative: return "json";
  }
  return "gexf";
}

std::optional<ExportFormat> ParseExportFormat(std::string_view text) {
  for (ExportFormat f :
       {ExportFormat::kGexf, ExportFormat::kGraphMl, ExportFormat::kDot,
        ExportFormat::kCsvEdges, ExportFormat::kCsvVertices,
        ExportFormat::kJsonNative}) {
    if (text == ToString(f)) return f;
  }
  if (text == "json-native") return ExportFormat::kJsonNative;
  return std::nullopt;
}

std::string_view ToString(ColorBy color_by) {
  switch (color_by) {
    case ColorBy::kNone: return "none";
    case ColorBy::kCommunity: return "community";
    case ColorBy::kLean: return "lean";
  }
  return "none";
}

std::optional<ColorBy> ParseColorBy(std::string_view text) {
  if (text == "none") return ColorBy::kNone;
  if (text == "community") return ColorBy::kCommunity;
  if (text == "lean") return ColorBy::kLean;
  return std::nullopt;
}

AttributedGraph ToAttributed(const KnowledgeGraph& graph,
                             const Partition* partition, ColorBy color_by) {
  if (color_by == ColorBy::kLean) {
    throw InputError("color_by=lean applies only to contrast subgraphs");
  }
  if (color_by == ColorBy::kCommunity && partition == nullptr) {
    throw InputError("color_by=community needs a community partition");
  }
  AttributedGraph g;
  g.label = graph.source_label();
  g.vertex_attrs.push_back({"weight", AttrType::kLong});
  if (partition != nullptr) g.vertex_attrs.push_back({"community", AttrType::kLong});
  g.edge_attrs = {{"frequency", AttrType::kLong},
                  {"polarity", AttrType::kDouble},
                  {"subjectivity", AttrType::kDouble}};
  for (const auto& [name, weight] : graph.vertices()) {
    AttributedGraph::Vertex v;
    v.id = name;
    v.values.push_back(AttrValue{weight});
    if (partition != nullptr) {
      auto it = partition->community.find(name);
      if (it == partition->community.end()) {
        throw InputError("partition does not assign vertex '" + name + "'");
      }
      v.values.push_back(AttrValue{static_cast<int64_t>(it->second)});
      if (color_by == ColorBy::kCommunity) {
        v.color = kPalette[static_cast<size_t>(it->second) % kPalette.size()];
      }
    }
    g.vertices.push_back(std::move(v));
  }
  for (const auto& [key, attrs] : graph.edges()) {
    AttributedGraph::Edge e;
    e.source = key.u;
    e.target = key.v;
    e.weight = static_cast<double>(attrs.frequency);
    e.values = {AttrValue{attrs.frequency}, AttrValue{attrs.polarity},
                AttrValue{attrs.subjectivity}};
    g.edges.push_back(std::move(e));
  }
  return g;
}

AttributedGraph ToAttributed(const ContrastSubgraph& subgraph,
                             ColorBy color_by) {
  if (color_by == ColorBy::kCommunity) {
    throw InputError("color_by=community is not available for contrast subgraphs");
  }
  AttributedGraph g;
  g.label = subgraph.label_a + " vs " + subgraph.label_b;
  g.vertex_attrs = {{"weight_a", AttrType::kLong},
                    {"weight_b", AttrType::kLong},
                    {"contrast_score", AttrType::kDouble},
                    {"lean", AttrType::kString}};
  g.edge_attrs = {{"frequency_a", AttrType::kLong},
                  {"frequency_b", AttrType::kLong},
                  {"polarity_a", AttrType::kDouble},
                  {"polarity_b", AttrType::kDouble},
                  {"subjectivity_a", AttrType::kDouble},
                  {"subjectivity_b", AttrType::kDouble},
                  {"contrast_edge", AttrType::kBool}};
  for (const auto& sv : subgraph.vertices) {
    AttributedGraph::Vertex v;
    v.id = sv.id;
    v.values = {AttrValue{sv.weight_a}, AttrValue{sv.weight_b}};
    v.values.push_back(sv.contrast_score
                           ? std::optional<AttrValue>(*sv.contrast_score)
                           : std::nullopt);
    v.values.push_back(sv.lean ? std::optional<AttrValue>(
                                     std::string(ToString(*sv.lean)))
                               : std::nullopt);
    if (color_by == ColorBy::kLean) {
      v.color = !sv.lean ? kNeutral : (*sv.lean == Lean::kA ? kLeanA : kLeanB);
    }
    g.vertices.push_back(std::move(v));
  }
  for (const auto& se : subgraph.edges) {
    AttributedGraph::Edge e;
    e.source = se.pair.u;
    e.target = se.pair.v;
    e.weight = static_cast<double>(se.frequency_a + se.frequency_b);
    e.values = {AttrValue{se.frequency_a},    AttrValue{se.frequency_b},
                AttrValue{se.polarity_a},     AttrValue{se.polarity_b},
                AttrValue{se.subjectivity_a}, AttrValue{se.subjectivity_b},
                AttrValue{se.contrast_edge}};
    g.edges.push_back(std::move(e));
  }
  return g;
}

void WriteAttributed(const AttributedGraph& graph, const ExportSpec& spec,
                     std::ostream& out) {
  switch (spec.format) {
    case ExportFormat::kGexf:
      WriteGexf(graph, spec, out);
      return;
    case ExportFormat::kGraphMl:
      WriteGraphMl(graph, spec, out);
      return;
    case ExportFormat::kDot:
      WriteDot(graph, spec, out);
      return;
    case ExportFormat::kCsvEdges:
      WriteCsvEdges(graph, spec, out);
      return;
    case ExportFormat::kCsvVertices:
      WriteCsvVertices(graph, spec, out);
      return;
    case ExportFormat::kJsonNative:
      break;
  }
  throw InputError("the native JSON format only holds knowledge graphs");
}

void ExportGraph(const KnowledgeGraph& graph, const Partition* partition,
                 const ExportSpec& spec, std::ostream& out) {
  if (spec.format == ExportFormat::kJsonNative) {
    if (partition != nullptr || spec.color_by != ColorBy::kNone ||
        !spec.include_attrs) {
      throw InputError(
          "the native JSON format stores the full graph only; communities, "
          "colors and attribute filtering are not supported");
    }
    ordered_json extra;
    if (spec.stamp) extra["stamp"] = *spec.stamp;
    WriteGraphJson(graph, out, extra);
    return;
  }
  WriteAttributed(ToAttributed(graph, partition, spec.color_by), spec, out);
}

void ExportGraph(const KnowledgeGraph& graph, const Partition* partition,
                 const ExportSpec& spec, const std::filesystem::path& path) {
  // Build everything first so a rejected combination leaves no file behind.
  std::ostringstream buffer;
  ExportGraph(graph, partition, spec, buffer);
  std::ofstream out;
  OpenForWrite(path, out);
  out << buffer.str();
  CheckWritten(path, out);
}

void ExportContrastSubgraph(const ContrastSubgraph& subgraph,
                            const ExportSpec& spec, std::ostream& out) {
  WriteAttributed(ToAttributed(subgraph, spec.color_by), spec, out);
}

void ExportContrastSubgraph(const ContrastSubgraph& subgraph,
                            const ExportSpec& spec,
                            const std::filesystem::path& path) {
  std::ostringstream buffer;
  ExportContrastSubgraph(subgraph, spec, buffer);
  std::ofstream out;
  OpenForWrite(path, out);
  out << buffer.str();
  CheckWritten(path, out);
}

}  // namespace mediakg
