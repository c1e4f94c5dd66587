#include "bpchess/chess/facts.hpp"

#include "bpchess/chess/attacks.hpp"

namespace bpchess::chess {
namespace {

// Game-start squares per piece type for White; Black uses the rank mirror.
Bitboard home_squares(Color c, PieceType t) {
  Bitboard white = 0;
  switch (t) {
    case PieceType::Knight: white = bit(sq::b1) | bit(sq::g1); break;
    case PieceType::Bishop: white = bit(sq::c1) | bit(sq::f1); break;
    case PieceType::Rook: white = bit(sq::a1) | bit(sq::h1); break;
    case PieceType::Queen: white = bit(sq::d1); break;
    default: break;
  }
  return c == Color::White ? white : white << 56;
}

ColorFacts side_facts(const Board& b, Color c) {
  ColorFacts f;
  const Bitboard occ = b.occupied();
  for (int p = 0; p < kPieceTypes; ++p) {
    const Piece piece{c, static_cast<PieceType>(p)};
    const Bitboard units = b.pieces(c, piece.type);
    f.material += material_value(piece.type) * popcount(units);
    for (Square s : squares(units)) f.attacks |= attacks_from(piece, s, occ);
  }
  const Bitboard own = b.occupancy(c);
  f.center_control = popcount((own | f.attacks) & kCentralSquares);
  const Bitboard enemy_half = c == Color::White ? 0xFFFFFFFF00000000ULL : 0x00000000FFFFFFFFULL;
  f.space = popcount(f.attacks & enemy_half);
  f.weak_square_attackers = popcount(attackers_to(b, c == Color::White ? sq::f7 : sq::f2, c));

  for (PieceType t : {PieceType::Knight, PieceType::Bishop, PieceType::Rook, PieceType::Queen}) {
    const Bitboard units = b.pieces(c, t);
    f.developed += popcount(units & ~home_squares(c, t));
    f.defended += popcount(units & f.attacks);
  }

  const Bitboard pawns = b.pieces(c, PieceType::Pawn);
  for (int file = 0; file < 8; ++file) {
    const int n = popcount(pawns & file_mask(file));
    if (n == 0) continue;
    f.doubled_pawns += n - 1;
    Bitboard neighbours = 0;
    if (file > 0) neighbours |= file_mask(file - 1);
    if (file < 7) neighbours |= file_mask(file + 1);
    if (!(pawns & neighbours)) f.isolated_pawns += n;
  }
  return f;
}

}  // namespace

std::vector<Pin> find_pins(const Board& b, Color by) {
  std::vector<Pin> pins;
  const Color them = ~by;
  const Bitboard targets = b.pieces(them, PieceType::King) | b.pieces(them, PieceType::Queen);
  constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (Square from : squares(b.occupancy(by))) {
    const PieceType type = b.at(from)->type;
    const bool rook_like = type == PieceType::Rook || type == PieceType::Queen;
    const bool bishop_like = type == PieceType::Bishop || type == PieceType::Queen;
    if (!rook_like && !bishop_like) continue;
    for (int d = 0; d < 8; ++d) {
      const bool diagonal = d >= 4;
      if ((diagonal && !bishop_like) || (!diagonal && !rook_like)) continue;
      int f = from.file() + kDirs[d][0];
      int r = from.rank() + kDirs[d][1];
      std::optional<Square> first;
      while (f >= 0 && f < 8 && r >= 0 && r < 8) {
        const Square s = Square::at(f, r);
        if (const auto p = b.at(s)) {
          if (!first) {
            if (p->color != them || p->type == PieceType::King) break;
            first = s;
          } else {
            if (targets & bit(s)) pins.push_back(Pin{from, *first, s});
            break;
          }
        }
        f += kDirs[d][0];
        r += kDirs[d][1];
      }
    }
  }
  return pins;
}

PositionFacts position_facts(const Board& board) {
  PositionFacts facts;
  facts.side[0] = side_facts(board, Color::White);
  facts.side[1] = side_facts(board, Color::Black);
  facts.pins = find_pins(board, Color::White);
  auto black = find_pins(board, Color::Black);
  facts.pins.insert(facts.pins.end(), black.begin(), black.end());
  return facts;
}

}  // namespace bpchess::chess
