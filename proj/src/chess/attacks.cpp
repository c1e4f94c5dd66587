#include "bpchess/chess/attacks.hpp"

#include <array>

namespace bpchess::chess {
namespace {

struct LeaperTables {
  std::array<Bitboard, 64> knight{};
  std::array<Bitboard, 64> king{};
  std::array<std::array<Bitboard, 64>, 2> pawn{};

  LeaperTables() {
    constexpr int kKnight[8][2] = {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
    constexpr int kKing[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    for (int i = 0; i < 64; ++i) {
      const Square s(i);
      for (const auto& d : kKnight) knight[i] |= offset(s, d[0], d[1]);
      for (const auto& d : kKing) king[i] |= offset(s, d[0], d[1]);
      pawn[0][i] = offset(s, -1, 1) | offset(s, 1, 1);
      pawn[1][i] = offset(s, -1, -1) | offset(s, 1, -1);
    }
  }

  static Bitboard offset(Square s, int df, int dr) {
    const int f = s.file() + df;
    const int r = s.rank() + dr;
    if (f < 0 || f > 7 || r < 0 || r > 7) return 0;
    return bit(Square::at(f, r));
  }
};

const LeaperTables& tables() {
  static const LeaperTables t;
  return t;
}

Bitboard ray_attacks(Square s, Bitboard occupied, const int (&dirs)[4][2]) {
  Bitboard result = 0;
  for (const auto& d : dirs) {
    int f = s.file() + d[0];
    int r = s.rank() + d[1];
    while (f >= 0 && f < 8 && r >= 0 && r < 8) {
      const Bitboard b = bit(Square::at(f, r));
      result |= b;
      if (occupied & b) break;
      f += d[0];
      r += d[1];
    }
  }
  return result;
}

constexpr int kDiagonal[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
constexpr int kOrthogonal[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

}  // namespace

Bitboard knight_attacks(Square s) { return tables().knight[s.index()]; }
Bitboard king_attacks(Square s) { return tables().king[s.index()]; }
Bitboard pawn_attacks(Color c, Square s) { return tables().pawn[index(c)][s.index()]; }
Bitboard bishop_attacks(Square s, Bitboard occupied) { return ray_attacks(s, occupied, kDiagonal); }
Bitboard rook_attacks(Square s, Bitboard occupied) { return ray_attacks(s, occupied, kOrthogonal); }

Bitboard attacks_from(Piece piece, Square s, Bitboard occupied) {
  switch (piece.type) {
    case PieceType::Pawn: return pawn_attacks(piece.color, s);
    case PieceType::Knight: return knight_attacks(s);
    case PieceType::Bishop: return bishop_attacks(s, occupied);
    case PieceType::Rook: return rook_attacks(s, occupied);
    case PieceType::Queen: return queen_attacks(s, occupied);
    case PieceType::King: return king_attacks(s);
  }
  return 0;
}

Bitboard attackers_to(const Board& board, Square s, Color by, Bitboard occupied) {
  const Bitboard queens = board.pieces(by, PieceType::Queen);
  return (pawn_attacks(~by, s) & board.pieces(by, PieceType::Pawn)) |
         (knight_attacks(s) & board.pieces(by, PieceType::Knight)) |
         (king_attacks(s) & board.pieces(by, PieceType::King)) |
         (bishop_attacks(s, occupied) & (board.pieces(by, PieceType::Bishop) | queens)) |
         (rook_attacks(s, occupied) & (board.pieces(by, PieceType::Rook) | queens));
}

Bitboard attackers_to(const Board& board, Square s, Color by) {
  return attackers_to(board, s, by, board.occupied());
}

Bitboard attack_map(const Board& board, Color c) {
  Bitboard result = 0;
  const Bitboard occ = board.occupied();
  for (int p = 0; p < kPieceTypes; ++p) {
    const Piece piece{c, static_cast<PieceType>(p)};
    for (Square s : squares(board.pieces(c, piece.type))) result |= attacks_from(piece, s, occ);
  }
  return result;
}

}  // namespace bpchess::chess
