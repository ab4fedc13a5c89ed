#include "mediakg/canon.h"

#include <fstream>
#include <ostream>
#include <tuple>
#include <vector>

#include "mediakg/errors.h"
#include "mediakg/text.h"

namespace mediakg {
namespace {

std::string JoinTokens(const std::vector<std::string_view>& tokens,
                       size_t begin, size_t end) {
  std::string out;
  for (size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out.append(tokens[i]);
  }
  return out;
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::optional<std::string> AliasTable::Canonicalize(
    std::string_view surface) const {
  auto it = canonical_.find(surface);
  if (it == canonical_.end()) return std::nullopt;
  return it->second;
}

bool AliasTable::Knows(std::string_view surface) const {
  return canonical_.find(surface) != canonical_.end() ||
         dropped_.find(surface) != dropped_.end();
}

AliasTable BuildAliasTable(const MentionCounts& mentions,
                           const CanonOptions& options) {
  if (options.min_parent_freq < 1 || options.min_child_freq < 1) {
    throw InputError("min_parent_freq and min_child_freq must be >= 1");
  }
  AliasTable table;
  table.options_ = options;
  table.surface_freq_ = mentions;

  MentionCounts survivors;
  for (const auto& [surface, freq] : mentions) {
    std::optional<DropReason> reason;
    if (CodePointCount(surface) <= 1) {
      reason = DropReason::kSingleCharacter;
    } else if (IsStopwordSurface(surface)) {
      reason = DropReason::kStopword;
    } else if (options.blocklist.contains(surface)) {
      reason = DropReason::kBlocklisted;
    } else if (freq < options.min_child_freq) {
      reason = DropReason::kRare;
    }
    if (reason) {
      table.dropped_.emplace(surface, *reason);
      table.dropped_mass_ += freq;
    } else {
      survivors.emplace(surface, freq);
    }
  }

  // Direct parent of each surviving surface, if any.
  std::map<std::string, std::string, std::less<>> parent;
  for (const auto& [surface, freq] : survivors) {
    const auto tokens = SplitTokens(surface);
    const size_t n = tokens.size();
    // (frequency, -token count, candidate); best = max freq, then fewest
    // tokens, then lexicographically smallest.
    std::optional<std::tuple<int64_t, size_t, std::string>> best;
    for (size_t len = 1; len < n; ++len) {
      for (size_t begin = 0; begin + len <= n; ++begin) {
        std::string candidate = JoinTokens(tokens, begin, begin + len);
        auto it = survivors.find(candidate);
        if (it == survivors.end()) continue;
        const int64_t pf = it->second;
        if (pf < options.min_parent_freq || pf < freq) continue;
        if (!best || pf > std::get<0>(*best) ||
            (pf == std::get<0>(*best) &&
             (len < std::get<1>(*best) ||
              (len == std::get<1>(*best) && candidate < std::get<2>(*best))))) {
          best.emplace(pf, len, std::move(candidate));
        }
      }
    }
    if (best) parent.emplace(surface, std::get<2>(*best));
  }

  for (const auto& [surface, freq] : survivors) {
    std::string target = surface;
    // Every hop strictly shortens the surface, so this terminates.
    for (auto it = parent.find(target); it != parent.end();
         it = parent.find(target)) {
      target = it->second;
    }
    table.frequencies_[target] += freq;
    table.canonical_.emplace(surface, std::move(target));
  }
  return table;
}

std::set<std::string, std::less<>> LoadBlocklist(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open blocklist " + path.string());
  std::set<std::string, std::less<>> blocklist;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string normalized = NormalizeSurface(line);
    if (!normalized.empty()) blocklist.insert(std::move(normalized));
  }
  return blocklist;
}

void WriteAliasCsv(const AliasTable& table, std::ostream& out) {
  out << "surface,canonical,frequency\r\n";
  for (const auto& [surface, canonical] : table.canonical()) {
    const int64_t freq = table.surface_frequencies().find(surface)->second;
    out << CsvField(surface) << ',' << CsvField(canonical) << ',' << freq
        << "\r\n";
  }
}

}  // namespace mediakg
