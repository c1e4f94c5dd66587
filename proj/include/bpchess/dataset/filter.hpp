#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpchess/chess/pgn.hpp"

namespace bpchess::dataset {

struct FilterConfig {
  int elo_lo = 1200;
  int elo_hi = 1300;  // exclusive
  int time_base_min = 600;
  int time_base_max = 1200;
  bool require_complete = true;
  std::size_t max_games = 5000;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
};

/// Base seconds of a TimeControl value such as "600+5"; nullopt for "-",
/// "?" or anything unparsable.
std::optional<int> time_control_base(const std::string& tc);

/// Reason the game fails the filter, or nullopt when it passes.
std::optional<std::string> rejection_reason(const chess::GameRecord& game, const FilterConfig& config);

struct FilterResult {
  std::vector<chess::GameRecord> games;
  std::vector<chess::Diagnostic> dropped;
  std::size_t passed = 0;  // before sampling
};

/// Keeps games that pass every predicate, then samples max_games of them
/// uniformly with the configured seed (input order is preserved).
FilterResult filter_games(std::vector<chess::GameRecord> games, const FilterConfig& config);

}  // namespace bpchess::dataset
