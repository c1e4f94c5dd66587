#include "bpchess/chess/movegen.hpp"

#include <algorithm>
#include <tuple>

#include "bpchess/chess/attacks.hpp"

namespace bpchess::chess {
namespace {

void clear_rights_for_square(CastlingRights& r, Square s) {
  if (s == sq::a1) r.white_queenside = false;
  if (s == sq::h1) r.white_kingside = false;
  if (s == sq::a8) r.black_queenside = false;
  if (s == sq::h8) r.black_kingside = false;
  if (s == sq::e1) r.white_kingside = r.white_queenside = false;
  if (s == sq::e8) r.black_kingside = r.black_queenside = false;
}

// Plays a pseudo-legal move without legality checks.
Board play(const Board& board, const Move& m) {
  Board next = board;
  const Color us = board.side_to_move();
  if (m.flags & kEnPassant) {
    next.remove(Square::at(m.to.file(), m.from.rank()));
  }
  next.remove(m.from);
  next.put(m.to, Piece{us, m.promotion.value_or(m.piece)});
  if (m.flags & kCastleKingside) {
    const int r = m.from.rank();
    next.remove(Square::at(7, r));
    next.put(Square::at(5, r), Piece{us, PieceType::Rook});
  } else if (m.flags & kCastleQueenside) {
    const int r = m.from.rank();
    next.remove(Square::at(0, r));
    next.put(Square::at(3, r), Piece{us, PieceType::Rook});
  }
  CastlingRights rights = board.castling();
  clear_rights_for_square(rights, m.from);
  clear_rights_for_square(rights, m.to);
  next.set_castling(rights);
  next.set_en_passant(m.flags & kDoublePush
                          ? std::optional<Square>(Square::at(m.from.file(), (m.from.rank() + m.to.rank()) / 2))
                          : std::nullopt);
  const bool reset = m.piece == PieceType::Pawn || m.captured.has_value();
  next.set_clocks(reset ? 0 : board.halfmove_clock() + 1,
                  board.fullmove_number() + (us == Color::Black ? 1 : 0));
  next.set_side_to_move(~us);
  return next;
}

void add_pawn_moves(const Board& b, Square from, Square to, std::optional<PieceType> captured,
                    std::uint8_t flags, std::vector<Move>& out) {
  const int last = b.side_to_move() == Color::White ? 7 : 0;
  if (to.rank() == last) {
    for (PieceType p : {PieceType::Knight, PieceType::Bishop, PieceType::Rook, PieceType::Queen}) {
      out.push_back(Move{from, to, PieceType::Pawn, captured, p, flags});
    }
  } else {
    out.push_back(Move{from, to, PieceType::Pawn, captured, std::nullopt, flags});
  }
}

std::vector<Move> pseudo_legal(const Board& b) {
  std::vector<Move> out;
  out.reserve(64);
  const Color us = b.side_to_move();
  const Color them = ~us;
  const Bitboard own = b.occupancy(us);
  const Bitboard enemy = b.occupancy(them);
  const Bitboard occ = b.occupied();
  auto captured_at = [&](Square s) -> std::optional<PieceType> {
    if (const auto p = b.at(s)) return p->type;
    return std::nullopt;
  };

  const int forward = us == Color::White ? 8 : -8;
  const int start_rank = us == Color::White ? 1 : 6;
  for (Square from : squares(b.pieces(us, PieceType::Pawn))) {
    const Square one(from.index() + forward);
    if (!(occ & bit(one))) {
      add_pawn_moves(b, from, one, std::nullopt, 0, out);
      const Square two(one.index() + forward);
      if (from.rank() == start_rank && !(occ & bit(two))) {
        out.push_back(Move{from, two, PieceType::Pawn, std::nullopt, std::nullopt, kDoublePush});
      }
    }
    const Bitboard caps = pawn_attacks(us, from);
    for (Square to : squares(caps & enemy)) add_pawn_moves(b, from, to, captured_at(to), 0, out);
    if (b.en_passant() && (caps & bit(*b.en_passant()))) {
      out.push_back(Move{from, *b.en_passant(), PieceType::Pawn, PieceType::Pawn, std::nullopt, kEnPassant});
    }
  }

  for (PieceType type : {PieceType::Knight, PieceType::Bishop, PieceType::Rook, PieceType::Queen, PieceType::King}) {
    for (Square from : squares(b.pieces(us, type))) {
      const Bitboard targets = attacks_from(Piece{us, type}, from, occ) & ~own;
      for (Square to : squares(targets)) out.push_back(Move{from, to, type, captured_at(to), std::nullopt, 0});
    }
  }

  const int r = us == Color::White ? 0 : 7;
  const Square king_home = Square::at(4, r);
  if (b.pieces(us, PieceType::King) & bit(king_home)) {
    auto empty = [&](int file) { return !(occ & bit(Square::at(file, r))); };
    auto safe = [&](int file) { return !is_attacked(b, Square::at(file, r), them); };
    if (b.castling().kingside(us) && empty(5) && empty(6) && safe(4) && safe(5) && safe(6)) {
      out.push_back(Move{king_home, Square::at(6, r), PieceType::King, std::nullopt, std::nullopt, kCastleKingside});
    }
    if (b.castling().queenside(us) && empty(1) && empty(2) && empty(3) && safe(4) && safe(3) && safe(2)) {
      out.push_back(
          Move{king_home, Square::at(2, r), PieceType::King, std::nullopt, std::nullopt, kCastleQueenside});
    }
  }
  return out;
}

bool canonical_less(const Move& a, const Move& b) {
  auto key = [](const Move& m) {
    return std::make_tuple(m.from.index(), m.to.index(), m.promotion ? index(*m.promotion) + 1 : 0);
  };
  return key(a) < key(b);
}

}  // namespace

std::vector<Successor> legal_successors(const Board& board) {
  board.validate();
  const Color us = board.side_to_move();
  std::vector<Move> moves = pseudo_legal(board);
  std::sort(moves.begin(), moves.end(), canonical_less);
  std::vector<Successor> out;
  out.reserve(moves.size());
  for (Move& m : moves) {
    Board next = play(board, m);
    if (is_attacked(next, next.king_square(us), ~us)) continue;
    if (next.in_check()) m.flags |= kCheck;
    out.push_back(Successor{m, std::move(next)});
  }
  return out;
}

std::vector<Move> legal_moves(const Board& board) {
  std::vector<Move> out;
  for (auto& s : legal_successors(board)) out.push_back(s.move);
  return out;
}

Board apply_move(const Board& board, const Move& move) {
  for (auto& s : legal_successors(board)) {
    if (s.move == move) return std::move(s.board);
  }
  throw ChessError("illegal move " + move.uci() + " in " + board.fen());
}

std::uint64_t perft(const Board& board, int depth) {
  if (depth <= 0) return 1;
  const auto next = legal_successors(board);
  if (depth == 1) return next.size();
  std::uint64_t total = 0;
  for (const auto& s : next) total += perft(s.board, depth - 1);
  return total;
}

}  // namespace bpchess::chess
