#pragma once

#include <array>
#include <vector>

#include "bpchess/chess/board.hpp"
#include "bpchess/chess/types.hpp"

namespace bpchess::chess {

/// Geometric summary of one side of a position.
struct ColorFacts {
  /// Every square reached by a unit of this colour, friendly-occupied squares
  /// included. Pawns contribute their diagonal capture squares only.
  Bitboard attacks = 0;
  int material = 0;        // P=1, N=B=3, R=5, Q=9
  int developed = 0;       // non-pawn, non-king units off their game-start squares
  int defended = 0;        // non-pawn, non-king units attacked by a friendly unit
  int center_control = 0;  // central squares occupied or attacked
  int space = 0;           // attacked squares in the enemy half
  int weak_square_attackers = 0;  // units hitting f7 (White) or f2 (Black)
  int doubled_pawns = 0;   // pawns beyond the first on each file
  int isolated_pawns = 0;  // pawns without friendly pawns on adjacent files

  friend bool operator==(const ColorFacts&, const ColorFacts&) = default;
};

/// A slider `pinner` attacks `pinned`, and `target` (an enemy king or queen)
/// stands directly behind it on the same ray.
struct Pin {
  Square pinner;
  Square pinned;
  Square target;

  friend bool operator==(const Pin&, const Pin&) = default;
};

struct PositionFacts {
  std::array<ColorFacts, 2> side;
  std::vector<Pin> pins;  // ordered by pinner square, then ray direction

  const ColorFacts& operator[](Color c) const { return side[index(c)]; }
};

PositionFacts position_facts(const Board& board);

/// Pins created by sliders of colour `by`.
std::vector<Pin> find_pins(const Board& board, Color by);

}  // namespace bpchess::chess
