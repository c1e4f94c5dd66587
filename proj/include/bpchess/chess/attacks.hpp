#pragma once

#include "bpchess/chess/board.hpp"
#include "bpchess/chess/types.hpp"

namespace bpchess::chess {

Bitboard knight_attacks(Square s);
Bitboard king_attacks(Square s);
/// Diagonal capture squares of a pawn of colour c standing on s.
Bitboard pawn_attacks(Color c, Square s);
Bitboard bishop_attacks(Square s, Bitboard occupied);
Bitboard rook_attacks(Square s, Bitboard occupied);
inline Bitboard queen_attacks(Square s, Bitboard occupied) {
  return bishop_attacks(s, occupied) | rook_attacks(s, occupied);
}

/// Squares reached by a unit on s, blockers included. Pawns: captures only.
Bitboard attacks_from(Piece piece, Square s, Bitboard occupied);

/// Units of colour `by` that attack s.
Bitboard attackers_to(const Board& board, Square s, Color by);
Bitboard attackers_to(const Board& board, Square s, Color by, Bitboard occupied);

inline bool is_attacked(const Board& board, Square s, Color by) {
  return attackers_to(board, s, by) != 0;
}

/// Union of squares attacked by every unit of colour c.
Bitboard attack_map(const Board& board, Color c);

}  // namespace bpchess::chess
