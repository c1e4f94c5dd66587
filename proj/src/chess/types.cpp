#include "bpchess/chess/types.hpp"

namespace bpchess::chess {

char piece_letter(PieceType type) {
  constexpr char kLetters[] = {'P', 'N', 'B', 'R', 'Q', 'K'};
  return kLetters[index(type)];
}

std::optional<PieceType> piece_from_letter(char upper) {
  switch (upper) {
    case 'P': return PieceType::Pawn;
    case 'N': return PieceType::Knight;
    case 'B': return PieceType::Bishop;
    case 'R': return PieceType::Rook;
    case 'Q': return PieceType::Queen;
    case 'K': return PieceType::King;
    default: return std::nullopt;
  }
}

int material_value(PieceType type) {
  constexpr int kValues[] = {1, 3, 3, 5, 9, 0};
  return kValues[index(type)];
}

std::optional<Square> Square::parse(std::string_view name) {
  if (name.size() != 2) return std::nullopt;
  const int file = name[0] - 'a';
  const int rank = name[1] - '1';
  if (file < 0 || file > 7 || rank < 0 || rank > 7) return std::nullopt;
  return Square::at(file, rank);
}

std::string Square::name() const {
  return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
}

std::string Move::uci() const {
  std::string s = from.name() + to.name();
  if (promotion) s += static_cast<char>(piece_letter(*promotion) - 'A' + 'a');
  return s;
}

}  // namespace bpchess::chess
