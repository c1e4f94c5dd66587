#!/usr/bin/env python3
"""Regenerates fixture50.pgn: 50 synthetic rapid games with varied headers.

Moves come from a seeded policy that prefers central, developing and
castling moves, so openings look roughly like club play. Headers are laid
out so a known subset passes the 1200-1299 rapid filter (see CASES).
Requires python-chess.
"""
import random
import sys

import chess
import chess.pgn

CENTER = {chess.C4, chess.C5, chess.D4, chess.D5, chess.E4, chess.E5, chess.F4, chess.F5}

# (count, time control, white elo, black elo, result, termination, note)
CASES = (
    [(35, None, None, None, None, "Normal", "kept")]
    + [(1, "300+3", 1250, 1260, "1-0", "Normal", "blitz")]
    + [(1, "180+0", 1210, 1290, "0-1", "Time forfeit", "blitz")]
    + [(1, "420+0", 1220, 1230, "1-0", "Normal", "below rapid")]
    + [(1, "900+10", 1310, 1250, "1-0", "Normal", "white elo above bucket")]
    + [(1, "900+10", 1250, 1195, "0-1", "Normal", "black elo below bucket")]
    + [(1, "600+0", 1450, 1470, "1/2-1/2", "Normal", "both elos above")]
    + [(1, "600+0", 1300, 1250, "1-0", "Normal", "white elo at exclusive upper bound")]
    + [(2, "600+0", 1240, 1260, "*", "Unterminated", "unfinished")]
    + [(2, "600+5", 1230, 1270, "1-0", "Abandoned", "abandoned")]
    + [(1, None, 1230, 1270, "1-0", "Normal", "no time control")]
    + [(1, "1800+0", 1230, 1270, "0-1", "Normal", "classical")]
    + [(1, "-", 1230, 1270, "0-1", "Normal", "correspondence")]
    + [(1, "600+0", 1230, 1270, "1-0", "Normal", "illegal san")]
)


def score(board, move, rng, castle_bonus):
    s = rng.random() * 2.0
    piece = board.piece_at(move.from_square)
    if board.is_castling(move):
        s += castle_bonus
    if move.to_square in CENTER:
        s += 2.0
    if piece.piece_type in (chess.KNIGHT, chess.BISHOP) and chess.square_rank(move.from_square) in (0, 7):
        s += 2.5
    if board.is_capture(move):
        s += 1.5 + (board.piece_at(move.to_square) or chess.Piece(chess.PAWN, True)).piece_type * 0.3
    if piece.piece_type == chess.QUEEN and board.fullmove_number < 6:
        s -= 1.0 if rng.random() < 0.8 else -1.0
    if piece.piece_type == chess.KING and not board.is_castling(move):
        s -= 2.0
    board.push(move)
    if board.is_checkmate():
        s += 50
    if board.is_attacked_by(board.turn, move.to_square) and not board.is_attacked_by(not board.turn, move.to_square):
        s -= 1.5 * (piece.piece_type != chess.PAWN)
    board.pop()
    return s


def play(rng, plies):
    castle_bonus = rng.choice([6.0, 6.0, 1.0, -4.0])
    board = chess.Board()
    moves = []
    while len(moves) < plies and not board.is_game_over():
        legal = list(board.legal_moves)
        best = max(legal, key=lambda m: (score(board, m, rng, castle_bonus), m.uci()))
        moves.append(best)
        board.push(best)
    return moves


def main(out_path):
    rng = random.Random(20240518)
    games = []
    index = 0
    for count, tc, welo, belo, result, term, note in CASES:
        for _ in range(count):
            index += 1
            moves = play(rng, rng.randint(24, 70))
            game = chess.pgn.Game()
            game.headers["Event"] = "Rated Rapid game"
            game.headers["Site"] = "synthetic"
            game.headers["Date"] = "2023.01.%02d" % (1 + index % 28)
            game.headers["Round"] = "-"
            game.headers["White"] = "w%03d" % index
            game.headers["Black"] = "b%03d" % index
            res = result or rng.choice(["1-0", "0-1", "1/2-1/2"])
            game.headers["Result"] = res
            game.headers["WhiteElo"] = str(welo or rng.randint(1200, 1299))
            game.headers["BlackElo"] = str(belo or rng.randint(1200, 1299))
            if tc is not None or note == "kept":
                game.headers["TimeControl"] = tc or rng.choice(["600+0", "600+5", "900+10", "1200+0"])
            game.headers["Termination"] = term if note != "kept" else rng.choice(["Normal", "Time forfeit"])
            node = game
            for i, m in enumerate(moves):
                node = node.add_variation(m)
                if index % 4 == 0:
                    node.comment = "[%%clk 0:%02d:%02d]" % (9 - i // 10, 59 - i)
                if index % 7 == 0 and i == 5:
                    node.nags.add(chess.pgn.NAG_DUBIOUS_MOVE)
            if index % 5 == 0 and len(moves) > 8:
                # A side line off the third move, dropped by the parser.
                board = game.board()
                for m in moves[:2]:
                    board.push(m)
                alt = [m for m in board.legal_moves if m != moves[2]][0]
                game.variations[0].variations[0].add_variation(alt).comment = "alternative"
            text = str(game)
            if note == "illegal san":
                text = text.replace(" 3. ", " 3. Qxh8 ", 1) if " 3. " in text else text
            games.append(text)
    with open(out_path, "w") as f:
        f.write("\n\n".join(games) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixture50.pgn")
