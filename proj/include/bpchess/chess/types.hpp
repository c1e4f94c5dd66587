#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bpchess::chess {

class ChessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color operator~(Color c) { return c == Color::White ? Color::Black : Color::White; }
constexpr int index(Color c) { return static_cast<int>(c); }

enum class PieceType : std::uint8_t { Pawn = 0, Knight, Bishop, Rook, Queen, King };

constexpr int index(PieceType p) { return static_cast<int>(p); }
constexpr int kPieceTypes = 6;

struct Piece {
  Color color;
  PieceType type;

  friend constexpr bool operator==(Piece, Piece) = default;
};

/// Upper-case SAN letter ('P' for pawns).
char piece_letter(PieceType type);
std::optional<PieceType> piece_from_letter(char upper);

/// Material value used by facts and the trading strategy (P=1, N=B=3, R=5, Q=9, K=0).
int material_value(PieceType type);

/// A board square; index = rank * 8 + file, a1 = 0, h8 = 63.
class Square {
 public:
  constexpr Square() = default;
  constexpr explicit Square(int index) : index_(static_cast<std::uint8_t>(index)) {}
  static constexpr Square at(int file, int rank) { return Square(rank * 8 + file); }

  /// Parses "e4"; nullopt when malformed.
  static std::optional<Square> parse(std::string_view name);

  constexpr int index() const { return index_; }
  constexpr int file() const { return index_ & 7; }
  constexpr int rank() const { return index_ >> 3; }
  constexpr Square flipped_rank() const { return at(file(), 7 - rank()); }
  std::string name() const;

  friend constexpr bool operator==(Square, Square) = default;
  friend constexpr auto operator<=>(Square, Square) = default;

 private:
  std::uint8_t index_ = 0;
};

using Bitboard = std::uint64_t;

constexpr Bitboard bit(Square s) { return Bitboard{1} << s.index(); }
constexpr int popcount(Bitboard b) { return std::popcount(b); }
constexpr Square lsb(Bitboard b) { return Square(std::countr_zero(b)); }
constexpr Bitboard file_mask(int file) { return Bitboard{0x0101010101010101} << file; }
constexpr Bitboard rank_mask(int rank) { return Bitboard{0xFF} << (8 * rank); }

/// Iterate set bits: for (Square s : squares(bb)).
class SquareRange {
 public:
  class iterator {
   public:
    explicit iterator(Bitboard b) : b_(b) {}
    Square operator*() const { return lsb(b_); }
    iterator& operator++() {
      b_ &= b_ - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return b_ != o.b_; }

   private:
    Bitboard b_;
  };
  explicit SquareRange(Bitboard b) : b_(b) {}
  iterator begin() const { return iterator(b_); }
  iterator end() const { return iterator(0); }

 private:
  Bitboard b_;
};

inline SquareRange squares(Bitboard b) { return SquareRange(b); }

namespace sq {
inline constexpr Square a1 = Square::at(0, 0), b1 = Square::at(1, 0), c1 = Square::at(2, 0),
                        d1 = Square::at(3, 0), e1 = Square::at(4, 0), f1 = Square::at(5, 0),
                        g1 = Square::at(6, 0), h1 = Square::at(7, 0);
inline constexpr Square a8 = Square::at(0, 7), b8 = Square::at(1, 7), c8 = Square::at(2, 7),
                        d8 = Square::at(3, 7), e8 = Square::at(4, 7), f8 = Square::at(5, 7),
                        g8 = Square::at(6, 7), h8 = Square::at(7, 7);
inline constexpr Square f2 = Square::at(5, 1), f7 = Square::at(5, 6);
}  // namespace sq

/// c4, c5, d4, d5, e4, e5, f4, f5.
inline constexpr Bitboard kCentralSquares =
    (file_mask(2) | file_mask(3) | file_mask(4) | file_mask(5)) & (rank_mask(3) | rank_mask(4));

enum MoveFlag : std::uint8_t {
  kCastleKingside = 1 << 0,
  kCastleQueenside = 1 << 1,
  kEnPassant = 1 << 2,
  kCheck = 1 << 3,
  kDoublePush = 1 << 4,
};

/// A move. Castling is encoded as the king's two-square step.
struct Move {
  Square from;
  Square to;
  PieceType piece = PieceType::Pawn;
  std::optional<PieceType> captured;
  std::optional<PieceType> promotion;
  std::uint8_t flags = 0;

  bool is_castle() const { return flags & (kCastleKingside | kCastleQueenside); }
  bool is_capture() const { return captured.has_value(); }
  bool gives_check() const { return flags & kCheck; }

  /// Compact identity: from | to << 6 | (promotion + 1) << 12.
  std::uint32_t id() const {
    const std::uint32_t promo = promotion ? static_cast<std::uint32_t>(index(*promotion)) + 1 : 0;
    return static_cast<std::uint32_t>(from.index()) | static_cast<std::uint32_t>(to.index()) << 6 |
           promo << 12;
  }

  /// "e2e4", "e7e8q".
  std::string uci() const;

  friend bool operator==(const Move& a, const Move& b) { return a.id() == b.id(); }
};

}  // namespace bpchess::chess
