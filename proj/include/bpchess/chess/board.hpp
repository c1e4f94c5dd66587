#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bpchess/chess/types.hpp"

namespace bpchess::chess {

struct CastlingRights {
  bool white_kingside = false;
  bool white_queenside = false;
  bool black_kingside = false;
  bool black_queenside = false;

  bool kingside(Color c) const { return c == Color::White ? white_kingside : black_kingside; }
  bool queenside(Color c) const { return c == Color::White ? white_queenside : black_queenside; }

  friend bool operator==(const CastlingRights&, const CastlingRights&) = default;
};

/// Immutable-by-convention chess position. Mutation goes through apply_move,
/// which returns a new Board.
class Board {
 public:
  /// Empty board, White to move, no rights. Used by FEN parsing and tests.
  Board();

  static Board initial();

  /// Parses a FEN string; throws ChessError when malformed or invalid.
  static Board from_fen(std::string_view fen);
  std::string fen() const;

  std::optional<Piece> at(Square s) const;
  Color side_to_move() const { return side_to_move_; }
  const CastlingRights& castling() const { return castling_; }
  std::optional<Square> en_passant() const { return en_passant_; }
  int halfmove_clock() const { return halfmove_clock_; }
  int fullmove_number() const { return fullmove_number_; }

  /// Zero-based half-move index implied by fullmove number and side to move.
  int ply_index() const { return (fullmove_number_ - 1) * 2 + (side_to_move_ == Color::Black ? 1 : 0); }

  Bitboard pieces(Color c, PieceType p) const { return bitboards_[index(c)][index(p)]; }
  Bitboard occupancy(Color c) const { return occupancy_[index(c)]; }
  Bitboard occupied() const { return occupancy_[0] | occupancy_[1]; }
  Square king_square(Color c) const { return lsb(pieces(c, PieceType::King)); }

  /// True when the side to move is in check.
  bool in_check() const;

  /// Throws ChessError unless: one king per color, the side not to move is not
  /// in check, castling flags agree with king and rook home squares, and no
  /// pawns stand on the back ranks.
  void validate() const;

  /// Placement mutators for fixtures and move application.
  void put(Square s, Piece p);
  void remove(Square s);
  void set_side_to_move(Color c) { side_to_move_ = c; }
  void set_castling(const CastlingRights& r) { castling_ = r; }
  void set_en_passant(std::optional<Square> s) { en_passant_ = s; }
  void set_clocks(int halfmove, int fullmove) {
    halfmove_clock_ = halfmove;
    fullmove_number_ = fullmove;
  }

  friend bool operator==(const Board& a, const Board& b);

 private:
  std::array<std::int8_t, 64> mailbox_;  // -1 empty, else color * 6 + type
  std::array<std::array<Bitboard, kPieceTypes>, 2> bitboards_{};
  std::array<Bitboard, 2> occupancy_{};
  Color side_to_move_ = Color::White;
  CastlingRights castling_;
  std::optional<Square> en_passant_;
  int halfmove_clock_ = 0;
  int fullmove_number_ = 1;
};

/// Colour-flipped, rank-mirrored copy (a1 <-> a8, White <-> Black). Files are
/// kept, so f7 maps to f2.
Board mirror(const Board& board);

}  // namespace bpchess::chess
