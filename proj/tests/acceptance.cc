// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fail.
// Tolerances and sizes are pinned here, not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "canon_oracle.h"
#include "cli/commands.h"
#include "mediakg/canon.h"
#include "mediakg/graph.h"
#include "mediakg/metrics.h"
#include "mediakg/sentiment.h"
#include "path_oracle.h"
#include "test_util.h"

namespace mediakg {
namespace {

using nlohmann::json;
using testing::ReadFile;
using testing::TempDir;
using testing::VertexName;
using testing::WriteFile;
using Clock = std::chrono::steady_clock;

int failures = 0;

void Report(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct CliRun {
  int code;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mediakg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, err.str()};
}

// ---------------------------------------------------------------- metrics

void MetricOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(597);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto small = testing::RandomConnectedGraph(rng, 8);
    const auto g = testing::GraphFromPairs(small.n, small.edges);
    const auto want = testing::FloydWarshall(small);
    SummaryOptions options;
    const GraphSummary summary = Summarize(g, options);
    const auto j = SummaryToJson(g, summary, options);
    const bool defined = want.pair_count > 0;
    bool ok = j["radius"] == want.radius && j["diameter"] == want.diameter &&
              j["avg_path_length_defined"] == defined;
    if (defined) {
      // Exact rational comparison: reported mean times pair count must give
      // back the integer distance sum.
      ok = ok && summary.paths->distance_sum == want.distance_sum &&
           summary.paths->pair_count == want.pair_count &&
           j["avg_path_length"].get<double>() ==
               static_cast<double>(want.distance_sum) /
                   static_cast<double>(want.pair_count);
    }
    mismatches += !ok;
  }
  const double secs = Seconds(start);
  Report(mismatches == 0 && secs < 10.0, "metric_oracle_equivalence",
         "200 random connected graphs (<= 8 vertices), " + std::to_string(mismatches) +
             " mismatches vs Floyd-Warshall, " + Fmt(secs) + " s (limit 10 s)");
}

// Q from the definition over a dense adjacency matrix.
double DirectQ(const KnowledgeGraph& g, const Partition& p) {
  std::vector<std::string> names;
  for (const auto& [n, w] : g.vertices()) names.push_back(n);
  const size_t n = names.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  auto idx = [&](const std::string& s) {
    return std::lower_bound(names.begin(), names.end(), s) - names.begin();
  };
  for (const auto& [k, e] : g.edges()) {
    a[idx(k.u)][idx(k.v)] = a[idx(k.v)][idx(k.u)] = static_cast<double>(e.frequency);
  }
  std::vector<double> deg(n, 0.0);
  double two_m = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) deg[i] += a[i][j];
    two_m += deg[i];
  }
  double q = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (p.community.at(names[i]) == p.community.at(names[j])) {
        q += a[i][j] - deg[i] * deg[j] / two_m;
      }
    }
  }
  return q / two_m;
}

void ModularityCriteria() {
  // Barbell: two K5 joined by one edge.
  std::vector<std::pair<int, int>> e;
  for (int base : {0, 5}) {
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) e.emplace_back(base + i, base + j);
    }
  }
  e.emplace_back(4, 5);
  const auto barbell = testing::GraphFromPairs(10, e);
  const auto rb = Louvain(barbell, WeightSource::kFrequency, 0);
  bool cliques = rb.partition.community_count == 2;
  for (int i = 0; i < 10; ++i) {
    cliques = cliques && rb.partition.community.at(VertexName(i)) ==
                             rb.partition.community.at(VertexName(i < 5 ? 0 : 5));
  }
  const double direct = DirectQ(barbell, rb.partition);
  Report(cliques && std::fabs(rb.modularity - direct) <= 1e-9, "modularity_barbell",
         "communities=" + std::to_string(rb.partition.community_count) +
             " Q=" + Fmt(rb.modularity) + " direct=" + Fmt(direct) + " (tol 1e-9)");

  // Karate club. The reference partition and Q come from networkx 3.4.2
  // louvain_communities / modularity.
  const auto karate = testing::GraphFromPairs(34, testing::KarateEdges());
  const double kNetworkxQ = 0.41978961209730437;
  const std::vector<std::vector<int>> nx_partition = {
      {1, 2, 3, 4, 8, 12, 13, 14, 18, 20, 22},
      {5, 6, 7, 11, 17},
      {9, 10, 15, 16, 19, 21, 23, 27, 30, 31, 33, 34},
      {24, 25, 26, 28, 29, 32}};
  std::map<std::string, int, std::less<>> labels;
  for (size_t c = 0; c < nx_partition.size(); ++c) {
    for (int v : nx_partition[c]) labels[VertexName(v - 1)] = static_cast<int>(c);
  }
  const double ours_on_nx =
      ModularityOf(karate, MakePartition(labels), WeightSource::kFrequency);
  const auto rk = Louvain(karate, WeightSource::kFrequency, 0);
  const double direct_k = DirectQ(karate, rk.partition);
  const bool karate_ok = karate.vertex_count() == 34 && karate.edge_count() == 78 &&
                         rk.modularity >= 0.40 &&
                         std::fabs(ours_on_nx - kNetworkxQ) <= 1e-12 &&
                         std::fabs(rk.modularity - direct_k) <= 1e-12;
  Report(karate_ok, "modularity_karate",
         "Q=" + Fmt(rk.modularity) + " (>= 0.40), communities=" +
             std::to_string(rk.partition.community_count) + "; networkx partition scored " +
             Fmt(ours_on_nx) + " vs networkx " + Fmt(kNetworkxQ) + " (tol 1e-12)");

  // Uniform x7 weight scaling on a randomly weighted karate graph.
  std::mt19937_64 rng(7);
  KnowledgeGraph g("T"), g7("T");
  for (int i = 0; i < 34; ++i) {
    g.AddVertex(VertexName(i), 1);
    g7.AddVertex(VertexName(i), 1);
  }
  for (auto [u, v] : testing::KarateEdges()) {
    const int64_t f = std::uniform_int_distribution<int64_t>(1, 9)(rng);
    g.SetEdge(EdgeKey::Of(VertexName(u), VertexName(v)), {f, 0, 0});
    g7.SetEdge(EdgeKey::Of(VertexName(u), VertexName(v)), {7 * f, 0, 0});
  }
  const auto r1 = Louvain(g, WeightSource::kFrequency, 3);
  const auto r7 = Louvain(g7, WeightSource::kFrequency, 3);
  const double cross = ModularityOf(g7, r1.partition, WeightSource::kFrequency);
  const bool scale_ok = r1.partition == r7.partition &&
                        std::fabs(r1.modularity - r7.modularity) <= 1e-12 &&
                        std::fabs(r1.modularity - cross) <= 1e-12;
  Report(scale_ok, "modularity_scale_invariance",
         "Q=" + Fmt(r1.modularity) + " Q(x7)=" + Fmt(r7.modularity) +
             " same partition=" + (r1.partition == r7.partition ? "yes" : "no") +
             " (tol 1e-12)");
}

// Fractional ranks by counting, no sorting.
std::vector<double> CountingRanks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (double y : x) {
      less += y < x[i];
      equal += y == x[i];
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

void SpearmanCriterion() {
  const std::vector<double> up = {0.1, 0.5, 0.2, 0.9, -0.3, 0.7};
  std::vector<double> mono, rev;
  for (double v : up) {
    mono.push_back(std::exp(v));
    rev.push_back(-3.0 * v);
  }
  const auto plus = SpearmanCorrelation(up, mono);
  const auto minus = SpearmanCorrelation(up, rev);

  const std::vector<double> pol = {0.2, -0.1, 0.2, 0.0, 0.5, -0.1, 0.2, 0.9, 0.0, -0.4};
  const std::vector<double> subj = {0.5, 0.3, 0.5, 0.1, 0.5, 0.8, 0.2, 0.9, 0.1, 0.3};
  const auto rx = CountingRanks(pol), ry = CountingRanks(subj);
  // Brute-force Pearson on the ranks via the centered form.
  double mx = 0, my = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i] / rx.size();
    my += ry[i] / ry.size();
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  const double brute = sxy / std::sqrt(sxx * syy);
  const auto tied = SpearmanCorrelation(pol, subj);
  const bool ok = plus == 1.0 && minus == -1.0 && tied &&
                  std::fabs(*tied - brute) <= 1e-12;
  Report(ok, "spearman_correctness",
         "monotone=" + (plus ? Fmt(*plus) : std::string("undefined")) +
             " reversed=" + (minus ? Fmt(*minus) : std::string("undefined")) +
             " tied=" + (tied ? Fmt(*tied) : std::string("undefined")) +
             " brute=" + Fmt(brute) + " (tol 1e-12)");
}

// ------------------------------------------------------------------ canon

void CanonCriterion() {
  std::mt19937_64 rng(600);
  int idem = 0, acyc = 0, mass = 0, oracle = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto check = testing::CheckAliasTable(testing::RandomMentions(rng));
    idem += !check.idempotent;
    acyc += !check.acyclic;
    mass += !check.mass_conserved;
    oracle += !check.matches_oracle;
  }
  const auto t = BuildAliasTable(
      {{"trump", 100}, {"donald trump", 40}, {"president donald trump", 5}});
  const bool fixture = t.Canonicalize("donald trump") == "trump" &&
                       t.Canonicalize("president donald trump") == "trump" &&
                       t.Canonicalize("trump") == "trump";
  Report(idem + acyc + mass + oracle == 0 && fixture, "canonicalization_properties",
         "1000 fuzzed multisets: idempotence failures " + std::to_string(idem) +
             ", cycles " + std::to_string(acyc) + ", mass violations " +
             std::to_string(mass) + ", oracle mismatches " + std::to_string(oracle) +
             "; trump fixture " + (fixture ? "resolves to trump" : "wrong"));
}

// -------------------------------------------------------- synthetic corpora

const std::vector<std::string> kFillerNames = {
    "Corin Tamm",  "Dax Orrel",  "Esme Quill", "Fenn Harrow", "Gila Marsh",
    "Hale Ostrow", "Ines Varga", "Joss Pell",  "Kira Moss",   "Lio Brandt"};

// Words with polarity exactly +0.5 / -0.5 in the default lexicon and no
// intensity effect.
std::vector<std::string> WordsWithPolarity(double p) {
  std::vector<std::string> out;
  for (const auto& [w, e] : SentimentLexicon::Default().entries()) {
    if (e.polarity == p && e.intensity == 1.0 &&
        w.find_first_not_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos) {
      out.push_back(w);
    }
  }
  return out;
}

std::string ArticleLine(const std::string& id, const std::string& source,
                        const std::string& body) {
  json j;
  j["id"] = id;
  j["source"] = source;
  j["date"] = "2016-05-01";
  j["title"] = "Notes on the day";
  j["body"] = body;
  return j.dump() + "\n";
}

// 200 articles. A quarter carry the planted pair with a +-0.5 word; every
// article mentions filler names in sentences with no lexicon words, and the
// planted entities also meet filler names neutrally.
std::string PlantedCorpus(const std::string& source, double polarity, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto words = WordsWithPolarity(polarity);
  auto pick = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
  };
  std::string out = "# {\"source\":\"" + source + "\"}\n";
  for (int i = 0; i < 200; ++i) {
    std::string body;
    if (i % 4 == 0) {
      body += "Alden Crane met Bria Volk in a " + pick(words) + " session. ";
    }
    std::string a = pick(kFillerNames), b = pick(kFillerNames);
    while (b == a) b = pick(kFillerNames);
    body += a + " spoke with " + b + " on Tuesday. ";
    if (i % 5 == 1) body += "Alden Crane visited " + pick(kFillerNames) + " in Harbor City. ";
    if (i % 5 == 3) body += "Bria Volk met " + pick(kFillerNames) + " in Harbor City. ";
    a = pick(kFillerNames);
    b = pick(kFillerNames);
    while (b == a) b = pick(kFillerNames);
    body += a + " met " + b + " about the budget.";
    char id[16];
    std::snprintf(id, sizeof(id), "%s-%03d", source.substr(0, 1).c_str(), i);
    out += ArticleLine(id, source, body);
  }
  return out;
}

void PlantedContrast(const std::filesystem::path& dir) {
  const auto start = Clock::now();
  WriteFile(dir / "a.jsonl", PlantedCorpus("Alpha Wire", 0.5, 11));
  WriteFile(dir / "b.jsonl", PlantedCorpus("Beta Post", -0.5, 12));
  std::string errors;
  for (const char* side : {"a", "b"}) {
    const std::string s = side;
    auto r = Cli({"annotate", "--corpus", (dir / (s + ".jsonl")).string(), "-o",
                  (dir / (s + ".ann.jsonl")).string()});
    if (r.code != 0) errors += r.err;
    r = Cli({"build-graph", "--annotations", (dir / (s + ".ann.jsonl")).string(), "-o",
             (dir / (s + ".graph.json")).string()});
    if (r.code != 0) errors += r.err;
  }
  const auto r = Cli({"contrast", "--graph-a", (dir / "a.graph.json").string(), "--graph-b",
                      (dir / "b.graph.json").string(), "-o",
                      (dir / "contrast.json").string()});
  if (r.code != 0) errors += r.err;
  const double secs = Seconds(start);
  if (!errors.empty()) {
    Report(false, "planted_contrast_end_to_end", "pipeline failed: " + errors);
    return;
  }
  const json report = json::parse(ReadFile(dir / "contrast.json"));
  const auto& edges = report["edge_items"];
  const auto& vertices = report["vertex_items"];
  const bool edge_first = !edges.empty() && edges[0]["u"] == "alden crane" &&
                          edges[0]["v"] == "bria volk";
  int planted_in_top3 = 0;
  for (size_t i = 0; i < std::min<size_t>(3, vertices.size()); ++i) {
    const auto& e = vertices[i]["entity"];
    planted_in_top3 += e == "alden crane" || e == "bria volk";
  }
  std::string first = edges.empty() ? std::string("none")
                                    : edges[0]["u"].get<std::string>() + " -- " +
                                          edges[0]["v"].get<std::string>() +
                                          " (pol_a " + Fmt(edges[0]["polarity_a"]) +
                                          ", pol_b " + Fmt(edges[0]["polarity_b"]) + ")";
  Report(edge_first && planted_in_top3 == 2 && secs < 30.0, "planted_contrast_end_to_end",
         "first edge item " + first + "; planted entities in top-3 vertex items: " +
             std::to_string(planted_in_top3) + "/2; " + Fmt(secs) + " s (limit 30 s)");
}

// Mirrored lexicon: each default word with nonzero polarity plus an invented
// twin of opposite polarity and equal subjectivity. Sentences carry exactly
// one lexicon word, drawn uniformly with a fair sign.
void Neutrality(const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, LexiconEntry>> base;
  for (const auto& [w, e] : SentimentLexicon::Default().entries()) {
    if (e.polarity != 0.0 && e.intensity == 1.0 &&
        w.find_first_not_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos) {
      base.emplace_back(w, e);
    }
  }
  std::string lexicon = "# mirrored test lexicon\n";
  double expected_subjectivity = 0.0;
  for (const auto& [w, e] : base) {
    lexicon += w + "\t" + Fmt(e.polarity) + "\t" + Fmt(e.subjectivity) + "\t1\n";
    lexicon += "qx" + w + "\t" + Fmt(-e.polarity) + "\t" + Fmt(e.subjectivity) + "\t1\n";
    expected_subjectivity += e.subjectivity / static_cast<double>(base.size());
  }
  WriteFile(dir / "mirror.tsv", lexicon);

  std::mt19937_64 rng(602);
  auto uniform = [&](size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  };
  std::string corpus = "# {\"source\":\"Neutral Desk\"}\n";
  for (int i = 0; i < 300; ++i) {
    std::string body;
    for (int s = 0; s < 4; ++s) {
      const std::string a = kFillerNames[uniform(kFillerNames.size())];
      std::string b = kFillerNames[uniform(kFillerNames.size())];
      while (b == a) b = kFillerNames[uniform(kFillerNames.size())];
      const std::string& w = base[uniform(base.size())].first;
      const std::string word = uniform(2) == 0 ? w : "qx" + w;
      body += a + " met " + b + " in a " + word + " session. ";
    }
    corpus += ArticleLine("n" + std::to_string(i), "Neutral Desk", body);
  }
  WriteFile(dir / "neutral.jsonl", corpus);

  std::string errors;
  auto r = Cli({"annotate", "--corpus", (dir / "neutral.jsonl").string(), "--lexicon",
                (dir / "mirror.tsv").string(), "--no-include-title", "-o",
                (dir / "neutral.ann.jsonl").string()});
  if (r.code != 0) errors += r.err;
  r = Cli({"build-graph", "--annotations", (dir / "neutral.ann.jsonl").string(), "-o",
           (dir / "neutral.graph.json").string()});
  if (r.code != 0) errors += r.err;
  r = Cli({"metrics", "--graph", (dir / "neutral.graph.json").string(), "-o",
           (dir / "neutral.metrics.json").string()});
  if (r.code != 0) errors += r.err;
  if (!errors.empty()) {
    Report(false, "neutrality_property", "pipeline failed: " + errors);
    return;
  }
  const json m = json::parse(ReadFile(dir / "neutral.metrics.json"));
  const double pol = m["avg_polarity"].get<double>();
  const double subj = m["avg_subjectivity"].get<double>();
  Report(std::fabs(pol) <= 0.02 && std::fabs(subj - expected_subjectivity) <= 0.03,
         "neutrality_property",
         "avg_polarity=" + Fmt(pol) + " (|.| <= 0.02), avg_subjectivity=" + Fmt(subj) +
             " vs expected " + Fmt(expected_subjectivity) + " (tol 0.03), edges=" +
             std::to_string(m["edge_count"].get<int>()));
}

// Full pipeline under several thread counts and repeats; every output file
// must be byte-identical to the first run's.
void Determinism(const std::filesystem::path& dir) {
  const std::vector<std::string> corpora = {
      (testing::DataDir() / "mini_corpus.jsonl").string(), (dir / "a.jsonl").string()};
  const std::vector<std::string> files = {"ann.jsonl", "graph.json", "metrics.json",
                                          "graph.gexf"};
  std::map<std::string, std::string> reference;
  int runs = 0, diffs = 0;
  std::string errors;
  for (size_t c = 0; c < corpora.size(); ++c) {
    for (const char* threads : {"1", "4", "16", "1", "16"}) {
      const auto out = dir / ("det" + std::to_string(runs++));
      std::filesystem::create_directories(out);
      auto step = [&](std::vector<std::string> args) {
        args.insert(args.begin(), {"--threads", threads, "--seed", "42"});
        const auto r = Cli(args);
        if (r.code != 0) errors += r.err;
      };
      step({"annotate", "--corpus", corpora[c], "-o", (out / "ann.jsonl").string()});
      step({"build-graph", "--annotations", (out / "ann.jsonl").string(), "-o",
            (out / "graph.json").string()});
      step({"metrics", "--graph", (out / "graph.json").string(), "-o",
            (out / "metrics.json").string()});
      step({"export", "--graph", (out / "graph.json").string(), "--color-by", "community",
            "-o", (out / "graph.gexf").string()});
      for (const auto& f : files) {
        const std::string key = std::to_string(c) + "/" + f;
        const std::string content = ReadFile(out / f);
        auto [it, inserted] = reference.emplace(key, content);
        if (!inserted && it->second != content) ++diffs;
      }
    }
  }
  Report(errors.empty() && diffs == 0, "determinism",
         std::to_string(runs) + " pipeline runs over 2 corpora at --threads 1/4/16 with " +
             "repeats; " + std::to_string(diffs) + " differing output files" +
             (errors.empty() ? std::string() : "; errors: " + errors));
}

}  // namespace
}  // namespace mediakg

int main() {
  using namespace mediakg;
  mediakg::testing::TempDir dir;
  MetricOracle();
  ModularityCriteria();
  SpearmanCriterion();
  CanonCriterion();
  PlantedContrast(dir.path());
  Neutrality(dir.path());
  Determinism(dir.path());
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
