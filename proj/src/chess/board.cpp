#include "bpchess/chess/board.hpp"

#include <sstream>
#include <vector>

#include "bpchess/chess/attacks.hpp"

namespace bpchess::chess {

Board::Board() { mailbox_.fill(-1); }

Board Board::initial() {
  return from_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1");
}

std::optional<Piece> Board::at(Square s) const {
  const int code = mailbox_[s.index()];
  if (code < 0) return std::nullopt;
  return Piece{static_cast<Color>(code / kPieceTypes), static_cast<PieceType>(code % kPieceTypes)};
}

void Board::put(Square s, Piece p) {
  remove(s);
  mailbox_[s.index()] = static_cast<std::int8_t>(index(p.color) * kPieceTypes + index(p.type));
  bitboards_[index(p.color)][index(p.type)] |= bit(s);
  occupancy_[index(p.color)] |= bit(s);
}

void Board::remove(Square s) {
  const auto p = at(s);
  if (!p) return;
  mailbox_[s.index()] = -1;
  bitboards_[index(p->color)][index(p->type)] &= ~bit(s);
  occupancy_[index(p->color)] &= ~bit(s);
}

bool Board::in_check() const {
  const Bitboard king = pieces(side_to_move_, PieceType::King);
  return king && is_attacked(*this, lsb(king), ~side_to_move_);
}

void Board::validate() const {
  for (Color c : {Color::White, Color::Black}) {
    if (popcount(pieces(c, PieceType::King)) != 1) {
      throw ChessError("invalid board: expected exactly one king per colour (" + fen() + ")");
    }
  }
  const Color waiting = ~side_to_move_;
  if (is_attacked(*this, king_square(waiting), side_to_move_)) {
    throw ChessError("invalid board: side not to move is in check (" + fen() + ")");
  }
  const Bitboard pawns = pieces(Color::White, PieceType::Pawn) | pieces(Color::Black, PieceType::Pawn);
  if (pawns & (rank_mask(0) | rank_mask(7))) {
    throw ChessError("invalid board: pawn on back rank (" + fen() + ")");
  }
  auto has = [&](Square s, Color c, PieceType t) {
    const auto p = at(s);
    return p && p->color == c && p->type == t;
  };
  const bool ok = (!castling_.white_kingside || (has(sq::e1, Color::White, PieceType::King) &&
                                                 has(sq::h1, Color::White, PieceType::Rook))) &&
                  (!castling_.white_queenside || (has(sq::e1, Color::White, PieceType::King) &&
                                                  has(sq::a1, Color::White, PieceType::Rook))) &&
                  (!castling_.black_kingside || (has(sq::e8, Color::Black, PieceType::King) &&
                                                 has(sq::h8, Color::Black, PieceType::Rook))) &&
                  (!castling_.black_queenside || (has(sq::e8, Color::Black, PieceType::King) &&
                                                  has(sq::a8, Color::Black, PieceType::Rook)));
  if (!ok) throw ChessError("invalid board: castling rights disagree with placement (" + fen() + ")");
  if (en_passant_) {
    const int expected_rank = side_to_move_ == Color::White ? 5 : 2;
    if (en_passant_->rank() != expected_rank) {
      throw ChessError("invalid board: en-passant square on wrong rank (" + fen() + ")");
    }
  }
}

Board Board::from_fen(std::string_view fen) {
  std::istringstream in{std::string(fen)};
  std::string placement, side, rights, ep;
  int halfmove = 0, fullmove = 1;
  in >> placement >> side >> rights >> ep;
  if (placement.empty() || side.empty()) throw ChessError("malformed FEN: '" + std::string(fen) + "'");
  if (!(in >> halfmove)) halfmove = 0;
  if (!(in >> fullmove)) fullmove = 1;

  Board b;
  int rank = 7, file = 0;
  for (char ch : placement) {
    if (ch == '/') {
      if (file != 8) throw ChessError("malformed FEN rank: '" + std::string(fen) + "'");
      --rank;
      file = 0;
    } else if (ch >= '1' && ch <= '8') {
      file += ch - '0';
    } else {
      const bool white = ch >= 'A' && ch <= 'Z';
      const auto type = piece_from_letter(white ? ch : static_cast<char>(ch - 'a' + 'A'));
      if (!type || file > 7 || rank < 0) throw ChessError("malformed FEN piece: '" + std::string(fen) + "'");
      b.put(Square::at(file, rank), Piece{white ? Color::White : Color::Black, *type});
      ++file;
    }
    if (file > 8) throw ChessError("malformed FEN rank: '" + std::string(fen) + "'");
  }
  if (rank != 0 || file != 8) throw ChessError("malformed FEN placement: '" + std::string(fen) + "'");

  if (side == "w") {
    b.side_to_move_ = Color::White;
  } else if (side == "b") {
    b.side_to_move_ = Color::Black;
  } else {
    throw ChessError("malformed FEN side: '" + std::string(fen) + "'");
  }
  for (char ch : rights) {
    switch (ch) {
      case 'K': b.castling_.white_kingside = true; break;
      case 'Q': b.castling_.white_queenside = true; break;
      case 'k': b.castling_.black_kingside = true; break;
      case 'q': b.castling_.black_queenside = true; break;
      case '-': break;
      default: throw ChessError("malformed FEN castling: '" + std::string(fen) + "'");
    }
  }
  if (!ep.empty() && ep != "-") {
    const auto s = Square::parse(ep);
    if (!s) throw ChessError("malformed FEN en-passant: '" + std::string(fen) + "'");
    b.en_passant_ = s;
  }
  b.halfmove_clock_ = halfmove;
  b.fullmove_number_ = fullmove;
  b.validate();
  return b;
}

std::string Board::fen() const {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    int empty = 0;
    for (int file = 0; file < 8; ++file) {
      const auto p = at(Square::at(file, rank));
      if (!p) {
        ++empty;
        continue;
      }
      if (empty) out += static_cast<char>('0' + empty);
      empty = 0;
      const char letter = piece_letter(p->type);
      out += p->color == Color::White ? letter : static_cast<char>(letter - 'A' + 'a');
    }
    if (empty) out += static_cast<char>('0' + empty);
    if (rank) out += '/';
  }
  out += side_to_move_ == Color::White ? " w " : " b ";
  std::string rights;
  if (castling_.white_kingside) rights += 'K';
  if (castling_.white_queenside) rights += 'Q';
  if (castling_.black_kingside) rights += 'k';
  if (castling_.black_queenside) rights += 'q';
  out += rights.empty() ? "-" : rights;
  out += ' ';
  out += en_passant_ ? en_passant_->name() : "-";
  out += ' ' + std::to_string(halfmove_clock_) + ' ' + std::to_string(fullmove_number_);
  return out;
}

bool operator==(const Board& a, const Board& b) {
  return a.mailbox_ == b.mailbox_ && a.side_to_move_ == b.side_to_move_ && a.castling_ == b.castling_ &&
         a.en_passant_ == b.en_passant_ && a.halfmove_clock_ == b.halfmove_clock_ &&
         a.fullmove_number_ == b.fullmove_number_;
}

Board mirror(const Board& board) {
  Board out;
  for (int i = 0; i < 64; ++i) {
    const Square s(i);
    if (const auto p = board.at(s)) out.put(s.flipped_rank(), Piece{~p->color, p->type});
  }
  out.set_side_to_move(~board.side_to_move());
  const auto& r = board.castling();
  out.set_castling({r.black_kingside, r.black_queenside, r.white_kingside, r.white_queenside});
  if (board.en_passant()) out.set_en_passant(board.en_passant()->flipped_rank());
  out.set_clocks(board.halfmove_clock(), board.fullmove_number());
  return out;
}

}  // namespace bpchess::chess
