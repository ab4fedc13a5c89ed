#ifndef MEDIAKG_CANON_H_
#define MEDIAKG_CANON_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace mediakg {

// Mention counts per normalized surface.
using MentionCounts = std::map<std::string, int64_t, std::less<>>;

struct CanonOptions {
  int64_t min_parent_freq = 10;
  int64_t min_child_freq = 2;
  // Normalized surfaces that never become entities.
  std::set<std::string, std::less<>> blocklist;
};

enum class DropReason { kRare, kSingleCharacter, kStopword, kBlocklisted };

// Final surface -> canonical entity mapping. Built once, then read-only.
class AliasTable {
 public:
  // Canonical entity for a normalized surface; nullopt for dropped or unseen
  // surfaces.
  std::optional<std::string> Canonicalize(std::string_view surface) const;

  // True if the surface was part of the input (mapped or dropped).
  bool Knows(std::string_view surface) const;

  // Every surviving surface, including canonical ones (which map to
  // themselves).
  const std::map<std::string, std::string, std::less<>>& canonical() const {
    return canonical_;
  }
  // Summed mention count per canonical entity.
  const std::map<std::string, int64_t, std::less<>>& frequencies() const {
    return frequencies_;
  }
  // Input mention count per surface (surviving and dropped).
  const MentionCounts& surface_frequencies() const { return surface_freq_; }
  const std::map<std::string, DropReason, std::less<>>& dropped() const {
    return dropped_;
  }
  int64_t dropped_mass() const { return dropped_mass_; }
  const CanonOptions& options() const { return options_; }

 private:
  friend AliasTable BuildAliasTable(const MentionCounts&, const CanonOptions&);

  std::map<std::string, std::string, std::less<>> canonical_;
  std::map<std::string, int64_t, std::less<>> frequencies_;
  MentionCounts surface_freq_;
  std::map<std::string, DropReason, std::less<>> dropped_;
  int64_t dropped_mass_ = 0;
  CanonOptions options_;
};

// Merges longer surfaces into shorter, frequent "parent" surfaces.
//
//  1. Drops surfaces seen fewer than min_child_freq times, single-character
//     and all-stopword surfaces, and blocklisted ones.
//  2. A surviving surface L may attach to a surviving parent P whose tokens
//     are a strict contiguous token run of L, with freq(P) >= min_parent_freq
//     and freq(P) >= freq(L).
//  3. Among candidates the most frequent wins; ties go to fewer tokens, then
//     lexicographic order.
//  4. Attachments are followed to a fixpoint; parents always have fewer
//     tokens, so chains are finite.
// Throws InputError if a threshold is below 1.
AliasTable BuildAliasTable(const MentionCounts& mentions,
                           const CanonOptions& options = {});

// Reads a blocklist: one surface per line, normalized on read; blank lines
// and '#' comments ignored.
std::set<std::string, std::less<>> LoadBlocklist(
    const std::filesystem::path& path);

// RFC 4180 CSV with header `surface,canonical,frequency`, one row per
// surviving surface in lexicographic order.
void WriteAliasCsv(const AliasTable& table, std::ostream& out);

}  // namespace mediakg

#endif  // MEDIAKG_CANON_H_
