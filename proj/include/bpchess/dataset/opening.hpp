#pragma once

#include <cstddef>

#include "bpchess/chess/pgn.hpp"

namespace bpchess::dataset {

inline constexpr std::size_t kOpeningPlyLimit = 20;

/// Number of opening plies: through the second castle when both sides
/// castle, otherwise min(length, 20).
std::size_t opening_length(const chess::GameRecord& game);

chess::GameRecord truncate_opening(chess::GameRecord game);

}  // namespace bpchess::dataset
