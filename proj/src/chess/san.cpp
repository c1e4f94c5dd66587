#include "bpchess/chess/san.hpp"

#include <algorithm>
#include <vector>

#include "bpchess/chess/movegen.hpp"

namespace bpchess::chess {
namespace {

[[noreturn]] void fail(const Board& board, std::string_view token, std::string_view why) {
  throw SanError(std::string(token),
                 std::string(why) + " SAN '" + std::string(token) + "' in position " + board.fen());
}

std::string_view strip_suffixes(std::string_view s) {
  while (!s.empty() && (s.back() == '+' || s.back() == '#' || s.back() == '!' || s.back() == '?')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Move parse_san(const Board& board, std::string_view token) {
  const std::string_view san = strip_suffixes(token);
  if (san.empty()) fail(board, token, "empty");
  const auto moves = legal_moves(board);

  if (san == "O-O" || san == "0-0" || san == "O-O-O" || san == "0-0-0") {
    const std::uint8_t flag = san.size() == 3 ? kCastleKingside : kCastleQueenside;
    for (const Move& m : moves) {
      if (m.flags & flag) return m;
    }
    fail(board, token, "illegal");
  }

  std::size_t pos = 0;
  PieceType piece = PieceType::Pawn;
  if (const auto p = piece_from_letter(san[0]); p && san[0] != 'P') {
    piece = *p;
    ++pos;
  } else if (san[0] == 'P') {
    ++pos;
  }

  std::optional<PieceType> promotion;
  std::string_view body = san.substr(pos);
  if (const auto eq = static_cast<std::size_t>(std::find(body.begin(), body.end(), '=') - body.begin());
      eq != body.size()) {
    if (eq + 2 != body.size()) fail(board, token, "malformed");
    promotion = piece_from_letter(body[eq + 1]);
    if (!promotion || *promotion == PieceType::King || *promotion == PieceType::Pawn) {
      fail(board, token, "malformed");
    }
    body = body.substr(0, eq);
  } else if (piece == PieceType::Pawn && body.size() >= 3) {
    // Some writers omit '=': "e8Q".
    if (const auto p = piece_from_letter(body.back()); p && body.back() != 'P') {
      promotion = p;
      body.remove_suffix(1);
    }
  }

  if (body.size() < 2) fail(board, token, "malformed");
  const auto to = Square::parse(body.substr(body.size() - 2));
  if (!to) fail(board, token, "malformed");
  std::string_view disamb = body.substr(0, body.size() - 2);
  if (!disamb.empty() && disamb.back() == 'x') disamb.remove_suffix(1);
  if (!disamb.empty() && disamb.back() == '-') disamb.remove_suffix(1);

  int from_file = -1, from_rank = -1;
  for (char c : disamb) {
    if (c >= 'a' && c <= 'h') {
      from_file = c - 'a';
    } else if (c >= '1' && c <= '8') {
      from_rank = c - '1';
    } else {
      fail(board, token, "malformed");
    }
  }

  const Move* found = nullptr;
  for (const Move& m : moves) {
    if (m.piece != piece || m.to != *to || m.promotion != promotion || m.is_castle()) continue;
    if (from_file >= 0 && m.from.file() != from_file) continue;
    if (from_rank >= 0 && m.from.rank() != from_rank) continue;
    if (found) fail(board, token, "ambiguous");
    found = &m;
  }
  if (!found) fail(board, token, "illegal");
  return *found;
}

std::string to_san(const Board& board, const Move& move) {
  const auto successors = legal_successors(board);
  return to_san(board, move, successors);
}

std::string to_san(const Board& /*board*/, const Move& move, std::span<const Successor> successors) {
  const Successor* self = nullptr;
  for (const auto& s : successors) {
    if (s.move == move) self = &s;
  }
  if (!self) throw ChessError("to_san: move " + move.uci() + " is not legal");
  std::string out;
  if (move.flags & kCastleKingside) {
    out = "O-O";
  } else if (move.flags & kCastleQueenside) {
    out = "O-O-O";
  } else if (move.piece == PieceType::Pawn) {
    if (move.is_capture()) {
      out += static_cast<char>('a' + move.from.file());
      out += 'x';
    }
    out += move.to.name();
    if (move.promotion) {
      out += '=';
      out += piece_letter(*move.promotion);
    }
  } else {
    out += piece_letter(move.piece);
    bool clash = false, same_file = false, same_rank = false;
    for (const auto& s : successors) {
      const Move& m = s.move;
      if (m.piece != move.piece || m.to != move.to || m.from == move.from) continue;
      clash = true;
      same_file |= m.from.file() == move.from.file();
      same_rank |= m.from.rank() == move.from.rank();
    }
    if (clash) {
      if (!same_file) {
        out += static_cast<char>('a' + move.from.file());
      } else if (!same_rank) {
        out += static_cast<char>('1' + move.from.rank());
      } else {
        out += move.from.name();
      }
    }
    if (move.is_capture()) out += 'x';
    out += move.to.name();
  }
  if (self->move.gives_check()) out += legal_successors(self->board).empty() ? '#' : '+';
  return out;
}

}  // namespace bpchess::chess
