#include "cli/commands.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/run_config.h"
#include "mediakg/annotate.h"
#include "mediakg/canon.h"
#include "mediakg/contrast.h"
#include "mediakg/corpus.h"
#include "mediakg/errors.h"
#include "mediakg/export.h"
#include "mediakg/graph.h"
#include "mediakg/metrics.h"
#include "mediakg/sentiment.h"

namespace mediakg::cli {
namespace {

using nlohmann::ordered_json;

struct Io {
  std::ostream& out;
  std::ostream& err;

  void Warn(std::string_view message) const {
    err << "mediakg: warning: " << message << '\n';
  }
};

// Writes to `path`, or to `out` when the path is empty or "-". Content is
// produced in memory first so a failed run never leaves a half-written file.
void Emit(const std::string& path, const std::string& content, const Io& io) {
  if (path.empty() || path == "-") {
    io.out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write " + path);
  f << content;
  f.close();
  if (!f) throw InputError("failed writing " + path);
}

void RequirePath(const std::string& value, std::string_view flag) {
  if (value.empty()) throw InputError("missing required " + std::string(flag));
}

std::string Dump(const ordered_json& j) { return j.dump(2) + "\n"; }

Corpus LoadCorpusFor(const RunConfig& cfg) {
  RequirePath(cfg.corpus, "--corpus");
  LoadCorpusOptions options;
  options.source_label = cfg.source_label;
  return LoadCorpus(cfg.corpus, options);
}

int IngestCheck(const RunConfig& cfg, const Io& io) {
  const Corpus corpus = LoadCorpusFor(cfg);
  size_t sentences = 0, dated = 0;
  std::optional<Date> first, last;
  auto key = [](const Date& d) { return std::tie(d.year, d.month, d.day); };
  for (const Article& a : corpus.articles) {
    sentences += ArticleSentences(a, cfg.include_title).size();
    if (!a.published) continue;
    ++dated;
    if (!first || key(*a.published) < key(*first)) first = a.published;
    if (!last || key(*last) < key(*a.published)) last = a.published;
  }
  if (corpus.articles.empty()) io.Warn("corpus has no articles");

  ordered_json j;
  j["meta"] = {{"tool", kToolName},
               {"version", kToolVersion},
               {"run_config", cfg.Echo("ingest-check")}};
  j["source_label"] = corpus.source_label;
  j["articles"] = corpus.articles.size();
  j["sentences"] = sentences;
  j["dated_articles"] = dated;
  j["first_date"] = first ? ordered_json(FormatIsoDate(*first)) : nullptr;
  j["last_date"] = last ? ordered_json(FormatIsoDate(*last)) : nullptr;
  Emit(cfg.output, Dump(j), io);
  return kExitOk;
}

int Annotate(const RunConfig& cfg, const Io& io) {
  const Corpus corpus = LoadCorpusFor(cfg);
  AnnotationSet set;
  if (cfg.annotate_mode == "import") {
    RequirePath(cfg.annotations, "--annotations");
    set = ImportAnnotations(cfg.annotations, &corpus);
  } else {
    const SentimentLexicon lexicon = cfg.lexicon.empty()
                                         ? SentimentLexicon::Default()
                                         : SentimentLexicon::Load(cfg.lexicon);
    BuiltinAnnotateOptions options;
    options.include_title = cfg.include_title;
    options.threads = cfg.threads;
    set.sentences = AnnotateBuiltin(corpus, lexicon, options);
    set.meta.annotator = "builtin";
    set.meta.source_label = corpus.source_label;
    set.meta.relations_extracted = false;
    set.meta.include_title = cfg.include_title;
    set.meta.lexicon = cfg.lexicon.empty()
                           ? std::string("default")
                           : std::filesystem::path(cfg.lexicon).filename().string();
  }
  set.meta.run_config = cfg.Echo("annotate");
  const bool any_entities =
      std::any_of(set.sentences.begin(), set.sentences.end(),
                  [](const SentenceAnnotation& s) { return !s.entities.empty(); });
  if (!any_entities) io.Warn("no entity mentions found");

  std::ostringstream buffer;
  WriteAnnotations(set, buffer);
  Emit(cfg.output, buffer.str(), io);
  return kExitOk;
}

struct LoadedAnnotations {
  AnnotationSet set;
  std::string source_label;
};

LoadedAnnotations LoadAnnotationsFor(const RunConfig& cfg) {
  RequirePath(cfg.annotations, "--annotations");
  std::optional<Corpus> corpus;
  if (!cfg.corpus.empty()) corpus = LoadCorpusFor(cfg);
  LoadedAnnotations loaded;
  loaded.set = ImportAnnotations(cfg.annotations, corpus ? &*corpus : nullptr);
  loaded.source_label = loaded.set.meta.source_label;
  if (cfg.source_label) {
    if (!loaded.source_label.empty() && loaded.source_label != *cfg.source_label) {
      throw InputError("annotations are for source '" + loaded.source_label +
                       "' but --source-label is '" + *cfg.source_label + "'");
    }
    loaded.source_label = *cfg.source_label;
  }
  if (loaded.source_label.empty()) {
    throw InputError(cfg.annotations +
                     ": no source label in the header; pass --source-label");
  }
  return loaded;
}

AliasTable AliasesFor(const RunConfig& cfg, const AnnotationSet& set) {
  CanonOptions options;
  options.min_parent_freq = cfg.min_parent_freq;
  options.min_child_freq = cfg.min_child_freq;
  if (!cfg.blocklist.empty()) options.blocklist = LoadBlocklist(cfg.blocklist);
  const MentionCounts counts =
      CountAdmissibleMentions(set.sentences, *ParseAdmissionMode(cfg.admission),
                              set.meta.relations_extracted);
  return BuildAliasTable(counts, options);
}

int BuildGraphCommand(const RunConfig& cfg, const Io& io) {
  const LoadedAnnotations loaded = LoadAnnotationsFor(cfg);
  if (loaded.set.sentences.empty()) {
    io.Warn("no annotated sentences; the graph is empty");
  }
  const AliasTable table = AliasesFor(cfg, loaded.set);

  BuildGraphOptions options;
  options.source_label = loaded.source_label;
  options.edge_mode = *ParseEdgeMode(cfg.edge_mode);
  options.admission = *ParseAdmissionMode(cfg.admission);
  options.relations_extracted = loaded.set.meta.relations_extracted;
  options.threads = cfg.threads;
  BuildGraphResult result = BuildGraph(loaded.set.sentences, table, options);
  for (const std::string& w : result.warnings) io.Warn(w);

  KnowledgeGraph graph =
      FilterGraph(result.graph, cfg.min_vertex_weight, cfg.min_edge_freq);
  if (!loaded.set.sentences.empty() && graph.empty()) {
    io.Warn("no vertices survived the thresholds; the graph is empty");
  }
  graph.build_config()["annotator"] = loaded.set.meta.annotator;
  graph.build_config()["lexicon"] = loaded.set.meta.lexicon;
  graph.build_config()["run_config"] = cfg.Echo("build-graph");
  graph.Validate();

  std::ostringstream buffer;
  WriteGraphJson(graph, buffer);
  Emit(cfg.output, buffer.str(), io);
  return kExitOk;
}

int Aliases(const RunConfig& cfg, const Io& io) {
  const LoadedAnnotations loaded = LoadAnnotationsFor(cfg);
  const AliasTable table = AliasesFor(cfg, loaded.set);
  std::ostringstream buffer;
  WriteAliasCsv(table, buffer);
  Emit(cfg.output, buffer.str(), io);
  return kExitOk;
}

KnowledgeGraph LoadGraphFor(const std::string& path, std::string_view flag) {
  RequirePath(path, flag);
  return LoadGraphJson(path);
}

// "out/bn.json" -> "out/bn."; empty when there is no output file.
std::string DefaultHistogramPrefix(const RunConfig& cfg) {
  if (!cfg.histogram_prefix.empty()) return cfg.histogram_prefix;
  if (cfg.output.empty() || cfg.output == "-") return {};
  std::filesystem::path p(cfg.output);
  return (p.parent_path() / p.stem()).string() + ".";
}

int Metrics(const RunConfig& cfg, const Io& io) {
  const KnowledgeGraph graph = LoadGraphFor(cfg.graph, "--graph");
  SummaryOptions options;
  options.weights = *ParseWeightSource(cfg.weight);
  options.seed = cfg.seed;
  options.threads = cfg.threads;
  if (graph.empty()) {
    io.Warn("graph is empty; only counts are reported");
  } else if (graph.edge_count() == 0) {
    io.Warn("graph has no edges; modularity and sentiment statistics are "
            "undefined");
  }
  const GraphSummary summary = Summarize(graph, options);
  ordered_json j = SummaryToJson(graph, summary, options);
  j["meta"]["run_config"] = cfg.Echo("metrics");
  Emit(cfg.output, Dump(j), io);

  const std::string prefix = DefaultHistogramPrefix(cfg);
  if (!prefix.empty() && summary.sentiment) {
    std::ostringstream pol, subj;
    WriteHistogramCsv(summary.sentiment->polarity_histogram, pol);
    WriteHistogramCsv(summary.sentiment->subjectivity_histogram, subj);
    Emit(prefix + "polarity_hist.csv", pol.str(), io);
    Emit(prefix + "subjectivity_hist.csv", subj.str(), io);
  }
  if (!cfg.partition_output.empty()) {
    if (!summary.communities) {
      io.Warn("no partition to write for a graph without edges");
    } else {
      std::ostringstream csv;
      csv << "vertex,community\r\n";
      for (const auto& [name, c] : summary.communities->partition.community) {
        const bool quote = name.find_first_of(",\"\r\n") != std::string::npos;
        if (quote) {
          csv << '"';
          for (char ch : name) csv << (ch == '"' ? "\"\"" : std::string(1, ch));
          csv << '"';
        } else {
          csv << name;
        }
        csv << ',' << c << "\r\n";
      }
      Emit(cfg.partition_output, csv.str(), io);
    }
  }
  return kExitOk;
}

ExportSpec SpecFor(const RunConfig& cfg, ordered_json meta) {
  ExportSpec spec;
  spec.format = *ParseExportFormat(cfg.format);
  spec.include_attrs = !cfg.no_attrs;
  spec.color_by = *ParseColorBy(cfg.color_by);
  spec.meta = std::move(meta);
  spec.stamp = cfg.stamp;
  return spec;
}

int Contrast(const RunConfig& cfg, const Io& io) {
  const KnowledgeGraph a = LoadGraphFor(cfg.graph_a, "--graph-a");
  const KnowledgeGraph b = LoadGraphFor(cfg.graph_b, "--graph-b");
  if (a.source_label() == b.source_label()) {
    io.Warn("both graphs have source label '" + a.source_label() + "'");
  }
  const Alignment alignment = Align(a, b);
  if (alignment.shared_vertices.empty()) {
    io.Warn("the graphs share no vertices; the contrast is empty");
  } else if (alignment.shared_edges.empty()) {
    io.Warn("the graphs share no edges; no edge contrast is possible");
  }

  const ContrastEdgeOptions edge_options{cfg.min_freq, cfg.min_abs_pol};
  const ContrastVertexOptions vertex_options{cfg.min_degree, cfg.top_k};
  const auto edges = ContrastEdges(a, b, edge_options);
  const auto vertices = ContrastVertices(a, b, vertex_options);
  ordered_json report =
      ContrastReportJson(a, b, edges, vertices, edge_options, vertex_options);
  report["config"]["run_config"] = cfg.Echo("contrast");
  Emit(cfg.output, Dump(report), io);

  if (!cfg.subgraph_output.empty()) {
    const ContrastSubgraph sub = BuildContrastSubgraph(edges, vertices, a, b);
    if (sub.empty()) io.Warn("the contrast subgraph is empty");
    ordered_json meta;
    meta["source_a"] = a.source_label();
    meta["source_b"] = b.source_label();
    meta["run_config"] = cfg.Echo("contrast");
    std::ostringstream buffer;
    ExportContrastSubgraph(sub, SpecFor(cfg, std::move(meta)), buffer);
    Emit(cfg.subgraph_output, buffer.str(), io);
  }
  return kExitOk;
}

int Export(const RunConfig& cfg, const Io& io) {
  const KnowledgeGraph graph = LoadGraphFor(cfg.graph, "--graph");
  ExportSpec spec = SpecFor(cfg, ordered_json::object());
  std::optional<Partition> partition;
  if (spec.color_by == ColorBy::kCommunity) {
    if (graph.edge_count() == 0) {
      io.Warn("graph has no edges; every vertex is its own community");
      std::map<std::string, int, std::less<>> labels;
      int next = 0;
      for (const auto& [name, w] : graph.vertices()) labels[name] = next++;
      partition = MakePartition(labels);
    } else {
      partition =
          Louvain(graph, *ParseWeightSource(cfg.weight), cfg.seed).partition;
    }
  }
  if (spec.format != ExportFormat::kJsonNative) {
    spec.meta["source_label"] = graph.source_label();
    spec.meta["build_config"] = graph.build_config();
    spec.meta["run_config"] = cfg.Echo("export");
  }
  std::ostringstream buffer;
  ExportGraph(graph, partition ? &*partition : nullptr, spec, buffer);
  Emit(cfg.output, buffer.str(), io);
  return kExitOk;
}

// Splices config-file settings into argv ahead of the command-line ones, so
// that explicit flags win (every option keeps its last value). Keys that
// belong to another subcommand are skipped, which lets one file serve a whole
// pipeline; keys no subcommand knows are an error.
std::vector<std::string> ExpandConfig(const CLI::App& app,
                                      std::vector<std::string> args) {
  std::optional<std::string> config_path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (!config_path) return args;

  size_t sub_pos = 0;
  const CLI::App* sub = nullptr;
  for (size_t i = 1; i < args.size() && sub == nullptr; ++i) {
    if (args[i].empty() || args[i][0] == '-') continue;
    if (const CLI::App* s = app.get_subcommand_no_throw(args[i])) {
      sub = s;
      sub_pos = i;
    }
  }

  std::vector<std::string> global_args, sub_args;
  for (const auto& [key, value] : ParseConfigFile(*config_path)) {
    if (key == "config") throw InputError("config files cannot nest");
    const std::string flag = "--" + key;
    const std::string arg = flag + "=" + value;
    if (app.get_option_no_throw(flag) != nullptr) {
      global_args.push_back(arg);
      continue;
    }
    if (sub != nullptr && sub->get_option_no_throw(flag) != nullptr) {
      sub_args.push_back(arg);
      continue;
    }
    bool known = false;
    for (const CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; })) {
      known = known || s->get_option_no_throw(flag) != nullptr;
    }
    if (!known) {
      throw InputError(*config_path + ": unknown setting '" + key + "'");
    }
  }

  std::vector<std::string> out;
  out.push_back(args[0]);
  out.insert(out.end(), global_args.begin(), global_args.end());
  for (size_t i = 1; i < args.size(); ++i) {
    out.push_back(args[i]);
    if (sub != nullptr && i == sub_pos) {
      out.insert(out.end(), sub_args.begin(), sub_args.end());
    }
  }
  return out;
}

void AddCanonFlags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--annotations", cfg.annotations, "Annotation file")
      ->required();
  sub->add_option("--corpus", cfg.corpus,
                  "Corpus file; when given, article ids are checked against it");
  sub->add_option("--source-label", cfg.source_label,
                  "Expected source label (overrides an unlabeled header)");
  sub->add_option("--min-parent-freq", cfg.min_parent_freq,
                  "Minimum frequency of an alias parent")
      ->capture_default_str();
  sub->add_option("--min-child-freq", cfg.min_child_freq,
                  "Surfaces rarer than this are dropped")
      ->capture_default_str();
  sub->add_option("--blocklist", cfg.blocklist,
                  "File of surfaces to drop, one per line");
  sub->add_option("--admission", cfg.admission,
                  "Entity admission: intersection or union")
      ->capture_default_str();
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  const Io io{out, err};
  RunConfig cfg;
  std::string config_path;

  CLI::App app{"Build and compare sentiment-annotated entity graphs from news "
               "corpora.",
               "mediakg"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")
      ->capture_default_str();
  app.add_option("--config", config_path, "key=value file of flag settings");

  auto add_output = [&](CLI::App* sub, const char* help) {
    sub->add_option("-o,--output", cfg.output, help);
  };

  CLI::App* ingest = app.add_subcommand("ingest-check", "Validate a corpus file");
  ingest->add_option("--corpus", cfg.corpus, "Corpus file (JSON lines)")
      ->required();
  ingest->add_option("--source-label", cfg.source_label, "Expected source label");
  ingest->add_flag("--include-title,!--no-include-title", cfg.include_title,
                   "Count the title as sentence 0");
  add_output(ingest, "Summary JSON (default: stdout)");

  CLI::App* annotate = app.add_subcommand("annotate", "Produce an annotation file");
  annotate->add_option("--corpus", cfg.corpus, "Corpus file (JSON lines)")
      ->required();
  annotate->add_option("--mode", cfg.annotate_mode, "builtin or import")
      ->capture_default_str();
  annotate->add_option("--lexicon", cfg.lexicon,
                       "Sentiment lexicon TSV (default: bundled)");
  annotate->add_option("--annotations", cfg.annotations,
                       "Annotation file to import (--mode import)");
  annotate->add_option("--source-label", cfg.source_label, "Expected source label");
  annotate->add_flag("--include-title,!--no-include-title", cfg.include_title,
                     "Annotate the title as sentence 0");
  add_output(annotate, "Annotation file (default: stdout)");

  CLI::App* build = app.add_subcommand("build-graph", "Build a knowledge graph");
  AddCanonFlags(build, cfg);
  build->add_option("--edge-mode", cfg.edge_mode,
                    "auto, sentence_cooccurrence or relation_pair")
      ->capture_default_str();
  build->add_option("--min-vertex-weight", cfg.min_vertex_weight,
                    "Drop vertices lighter than this")
      ->capture_default_str();
  build->add_option("--min-edge-freq", cfg.min_edge_freq,
                    "Drop edges rarer than this")
      ->capture_default_str();
  add_output(build, "Graph file (default: stdout)");

  CLI::App* aliases = app.add_subcommand("aliases", "Write the alias table as CSV");
  AddCanonFlags(aliases, cfg);
  add_output(aliases, "CSV file (default: stdout)");

  CLI::App* metrics = app.add_subcommand("metrics", "Summarize a graph");
  metrics->add_option("--graph", cfg.graph, "Graph file")->required();
  metrics->add_option("--weight", cfg.weight,
                      "Community weights: frequency or unit")
      ->capture_default_str();
  metrics->add_option("--histograms", cfg.histogram_prefix,
                      "Prefix for histogram CSVs (default: next to --output)");
  metrics->add_option("--partition-output", cfg.partition_output,
                      "CSV of vertex communities");
  add_output(metrics, "Summary JSON (default: stdout)");

  auto add_export_flags = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format,
                    "gexf, graphml, dot, csv-edges, csv-vertices or json")
        ->capture_default_str();
    sub->add_option("--color-by", cfg.color_by, "none, community or lean");
    sub->add_flag("--no-attrs", cfg.no_attrs, "Write structure only");
    sub->add_option("--stamp", cfg.stamp, "ISO date written into the file");
  };

  CLI::App* contrast = app.add_subcommand("contrast", "Compare two graphs");
  contrast->add_option("--graph-a", cfg.graph_a, "Graph of source A")->required();
  contrast->add_option("--graph-b", cfg.graph_b, "Graph of source B")->required();
  contrast->add_option("--min-freq", cfg.min_freq,
                       "Minimum edge frequency in both graphs")
      ->capture_default_str();
  contrast->add_option("--min-abs-pol", cfg.min_abs_pol,
                       "Minimum |polarity| in both graphs")
      ->capture_default_str();
  contrast->add_option("--min-degree", cfg.min_degree,
                       "Minimum vertex degree in both graphs")
      ->capture_default_str();
  contrast->add_option("--top-k", cfg.top_k, "Vertex items to keep")
      ->capture_default_str();
  contrast->add_option("--subgraph", cfg.subgraph_output,
                       "Also export the contrast subgraph here");
  add_export_flags(contrast);
  add_output(contrast, "Report JSON (default: stdout)");

  CLI::App* exporter = app.add_subcommand("export", "Export a graph");
  exporter->add_option("--graph", cfg.graph, "Graph file")->required();
  exporter->add_option("--weight", cfg.weight,
                       "Community weights for --color-by community")
      ->capture_default_str();
  add_export_flags(exporter);
  add_output(exporter, "Output file (default: stdout)");

  for (CLI::App* sub : {ingest, annotate, build, aliases, metrics, contrast, exporter}) {
    sub->fallthrough();
  }

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = ExpandConfig(app, std::move(args));
    std::vector<const char*> cargs;
    for (const std::string& a : args) cargs.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::Success& e) {
      app.exit(e, out, err);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return kExitInputError;
    }

    // Contrast subgraphs are colored by lean unless asked otherwise.
    if (contrast->parsed() && contrast->count("--color-by") == 0) {
      cfg.color_by = "lean";
    }
    cfg.Validate();

    using Command = std::function<int(const RunConfig&, const Io&)>;
    const std::vector<std::pair<CLI::App*, Command>> commands = {
        {ingest, IngestCheck},     {annotate, Annotate}, {build, BuildGraphCommand},
        {aliases, Aliases},        {metrics, Metrics},   {contrast, Contrast},
        {exporter, Export}};
    for (const auto& [sub, run] : commands) {
      if (sub->parsed()) return run(cfg, io);
    }
    throw InvariantError("no subcommand selected");
  } catch (const InputError& e) {
    err << "mediakg: error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "mediakg: internal error: " << e.what() << '\n';
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "mediakg: internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
}

}  // namespace mediakg::cli
