#pragma once

#include <cstdint>
#include <vector>

#include "bpchess/chess/board.hpp"
#include "bpchess/chess/types.hpp"

namespace bpchess::chess {

/// A legal move together with the position it produces.
struct Successor {
  Move move;
  Board board;
};

/// All legal moves with their resulting boards, in canonical order
/// (from-square, to-square, promotion piece). Throws ChessError when the
/// board violates its invariants.
std::vector<Successor> legal_successors(const Board& board);

/// Legal moves only, same canonical order.
std::vector<Move> legal_moves(const Board& board);

/// Returns the position after `move`; the input is left untouched.
/// Throws ChessError when the move is not legal in `board`.
Board apply_move(const Board& board, const Move& move);

/// Leaf-node count of the legal move tree of the given depth.
std::uint64_t perft(const Board& board, int depth);

}  // namespace bpchess::chess
