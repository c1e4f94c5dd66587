#include "bpchess/dataset/opening.hpp"

#include <algorithm>

namespace bpchess::dataset {
namespace {

bool is_castle_token(std::string_view san) {
  while (!san.empty() && (san.back() == '+' || san.back() == '#' || san.back() == '!' || san.back() == '?')) {
    san.remove_suffix(1);
  }
  return san == "O-O" || san == "O-O-O" || san == "0-0" || san == "0-0-0";
}

}  // namespace

std::size_t opening_length(const chess::GameRecord& game) {
  const auto& moves = game.san_moves;
  bool castled[2] = {false, false};
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!is_castle_token(moves[i])) continue;
    castled[i % 2] = true;
    if (castled[0] && castled[1]) return i + 1;
  }
  return std::min(moves.size(), kOpeningPlyLimit);
}

chess::GameRecord truncate_opening(chess::GameRecord game) {
  game.san_moves.resize(opening_length(game));
  return game;
}

}  // namespace bpchess::dataset
