#include "bpchess/dataset/filter.hpp"

#include <charconv>
#include <stdexcept>

#include "bpchess/util/random.hpp"

namespace bpchess::dataset {

void FilterConfig::validate() const {
  if (elo_lo >= elo_hi) throw std::invalid_argument("Elo bucket needs lo < hi");
  if (time_base_min <= 0 || time_base_min > time_base_max) {
    throw std::invalid_argument("time control bounds need 0 < min <= max");
  }
}

std::optional<int> time_control_base(const std::string& tc) {
  const auto plus = tc.find('+');
  const std::string_view base = std::string_view(tc).substr(0, plus);
  int v = 0;
  const auto [p, ec] = std::from_chars(base.data(), base.data() + base.size(), v);
  if (ec != std::errc() || p != base.data() + base.size() || base.empty()) return std::nullopt;
  return v;
}

std::optional<std::string> rejection_reason(const chess::GameRecord& game, const FilterConfig& config) {
  for (const char* key : {"TimeControl", "WhiteElo", "BlackElo", "Result"}) {
    if (!game.header(key)) return std::string("missing header ") + key;
  }
  const auto base = time_control_base(*game.header("TimeControl"));
  if (!base) return "unparsable TimeControl '" + *game.header("TimeControl") + "'";
  if (*base < config.time_base_min || *base > config.time_base_max) {
    return "time control base " + std::to_string(*base) + "s outside [" + std::to_string(config.time_base_min) + ", " +
           std::to_string(config.time_base_max) + "]";
  }
  for (const char* key : {"WhiteElo", "BlackElo"}) {
    const auto elo = game.int_header(key);
    if (!elo) return std::string("unparsable ") + key;
    if (*elo < config.elo_lo || *elo >= config.elo_hi) {
      return std::string(key) + " " + std::to_string(*elo) + " outside [" + std::to_string(config.elo_lo) + ", " +
             std::to_string(config.elo_hi) + ")";
    }
  }
  if (config.require_complete) {
    const std::string& result = *game.header("Result");
    if (result != "1-0" && result != "0-1" && result != "1/2-1/2") return "unfinished game (Result " + result + ")";
    if (const auto* term = game.header("Termination"); term && (*term == "Abandoned" || *term == "Unterminated")) {
      return "unfinished game (Termination " + *term + ")";
    }
  }
  return std::nullopt;
}

FilterResult filter_games(std::vector<chess::GameRecord> games, const FilterConfig& config) {
  config.validate();
  FilterResult out;
  std::vector<chess::GameRecord> kept;
  for (auto& g : games) {
    if (auto why = rejection_reason(g, config)) {
      out.dropped.push_back({g.source_id, *why});
    } else {
      kept.push_back(std::move(g));
    }
  }
  out.passed = kept.size();
  if (kept.size() <= config.max_games) {
    out.games = std::move(kept);
    return out;
  }
  util::Rng rng(util::derive_seed(config.seed, "filter.sample"));
  for (std::size_t i : util::sample_indices(kept.size(), config.max_games, rng)) {
    out.games.push_back(std::move(kept[i]));
  }
  return out;
}

}  // namespace bpchess::dataset
