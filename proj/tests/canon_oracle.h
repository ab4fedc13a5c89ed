#ifndef MEDIAKG_TESTS_CANON_ORACLE_H_
#define MEDIAKG_TESTS_CANON_ORACLE_H_

// Brute-force reading of the alias rule plus a fuzzer for mention
// multisets. Shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mediakg/canon.h"
#include "mediakg/text.h"

namespace mediakg::testing {

inline size_t TokenCount(const std::string& s) {
  return s.empty() ? 0 : 1 + std::count(s.begin(), s.end(), ' ');
}

// True when p is a strictly shorter contiguous run of whole tokens of s.
inline bool IsStrictSubrun(const std::string& p, const std::string& s) {
  if (p.size() >= s.size()) return false;
  return (" " + s + " ").find(" " + p + " ") != std::string::npos;
}

// surface -> canonical for every surviving surface.
inline std::map<std::string, std::string> OracleCanonical(
    const MentionCounts& mentions, const CanonOptions& options) {
  std::map<std::string, int64_t> alive;
  for (const auto& [s, f] : mentions) {
    bool one_char = CodePointCount(s) <= 1;
    if (one_char || IsStopwordSurface(s) || options.blocklist.contains(s) ||
        f < options.min_child_freq) {
      continue;
    }
    alive[s] = f;
  }
  std::map<std::string, std::string> parent;
  for (const auto& [s, f] : alive) {
    std::optional<std::string> best;
    for (const auto& [p, pf] : alive) {
      if (!IsStrictSubrun(p, s) || pf < options.min_parent_freq || pf < f) continue;
      if (!best) {
        best = p;
        continue;
      }
      const int64_t bf = alive.at(*best);
      if (pf > bf || (pf == bf && TokenCount(p) < TokenCount(*best)) ||
          (pf == bf && TokenCount(p) == TokenCount(*best) && p < *best)) {
        best = p;
      }
    }
    if (best) parent[s] = *best;
  }
  std::map<std::string, std::string> out;
  for (const auto& [s, f] : alive) {
    std::string t = s;
    while (parent.contains(t)) t = parent.at(t);
    out[s] = t;
  }
  return out;
}

struct FuzzCase {
  MentionCounts mentions;
  CanonOptions options;
};

inline FuzzCase RandomMentions(std::mt19937_64& rng) {
  static const std::vector<std::string> kVocab = {
      "trump",  "donald", "president", "hillary", "clinton", "new", "york",
      "the",    "of",     "bank",      "england", "x",       "us",  "senate"};
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  FuzzCase c;
  const int surfaces = uniform(1, 30);
  for (int i = 0; i < surfaces; ++i) {
    const int len = uniform(1, 4);
    std::string s;
    for (int t = 0; t < len; ++t) {
      if (t > 0) s += ' ';
      s += kVocab[uniform(0, static_cast<int>(kVocab.size()) - 1)];
    }
    c.mentions[s] += uniform(1, 60);
  }
  c.options.min_parent_freq = uniform(1, 25);
  c.options.min_child_freq = uniform(1, 6);
  if (uniform(0, 3) == 0) {
    auto it = c.mentions.begin();
    std::advance(it, uniform(0, static_cast<int>(c.mentions.size()) - 1));
    c.options.blocklist.insert(it->first);
  }
  return c;
}

struct CanonCheck {
  bool idempotent = true;
  bool acyclic = true;
  bool mass_conserved = true;
  bool matches_oracle = true;
  bool ok() const { return idempotent && acyclic && mass_conserved && matches_oracle; }
};

inline CanonCheck CheckAliasTable(const FuzzCase& c) {
  CanonCheck check;
  const AliasTable table = BuildAliasTable(c.mentions, c.options);
  int64_t total = 0;
  for (const auto& [s, f] : c.mentions) total += f;

  std::map<std::string, int64_t> regrouped;
  for (const auto& [s, canon] : table.canonical()) {
    // Idempotence: the canonical form is itself known and canonical.
    const auto again = table.Canonicalize(canon);
    if (!again || *again != canon) check.idempotent = false;
    // No cycles: each step strictly shortens, so the result is a strict
    // subrun of the surface or the surface itself.
    if (canon != s && !IsStrictSubrun(canon, s)) check.acyclic = false;
    regrouped[canon] += c.mentions.at(s);
  }
  int64_t kept = 0;
  for (const auto& [canon, f] : table.frequencies()) {
    kept += f;
    if (regrouped[canon] != f) check.mass_conserved = false;
  }
  if (regrouped.size() != table.frequencies().size()) check.mass_conserved = false;
  if (kept + table.dropped_mass() != total) check.mass_conserved = false;

  const auto expected = OracleCanonical(c.mentions, c.options);
  if (expected.size() != table.canonical().size()) check.matches_oracle = false;
  for (const auto& [s, canon] : expected) {
    const auto got = table.Canonicalize(s);
    if (!got || *got != canon) check.matches_oracle = false;
  }
  return check;
}

}  // namespace mediakg::testing

#endif  // MEDIAKG_TESTS_CANON_ORACLE_H_
