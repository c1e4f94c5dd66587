#pragma once

#include <span>
#include <string>
#include <string_view>

#include "bpchess/chess/board.hpp"
#include "bpchess/chess/movegen.hpp"
#include "bpchess/chess/types.hpp"

namespace bpchess::chess {

/// Raised for SAN tokens that match no legal move or more than one.
class SanError : public ChessError {
 public:
  SanError(std::string token, const std::string& what) : ChessError(what), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// Resolves a SAN token ("Nf3", "exd5", "O-O", "e8=Q+", "Nbd7!?") against
/// the legal moves of `board`.
Move parse_san(const Board& board, std::string_view san);

/// Minimal SAN for a legal move, with '+' or '#' suffix.
std::string to_san(const Board& board, const Move& move);

/// Same, reusing an already generated successor list of `board`.
std::string to_san(const Board& board, const Move& move, std::span<const Successor> successors);

}  // namespace bpchess::chess
