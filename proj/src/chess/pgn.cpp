#include "bpchess/chess/pgn.hpp"

#include <cctype>
#include <charconv>

#include "bpchess/chess/movegen.hpp"
#include "bpchess/chess/san.hpp"

namespace bpchess::chess {
namespace {

bool is_result(const std::string& t) { return t == "1-0" || t == "0-1" || t == "1/2-1/2" || t == "*"; }

bool is_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::optional<int> GameRecord::int_header(const std::string& key) const {
  const std::string* v = header(key);
  if (!v || v->empty()) return std::nullopt;
  int out = 0;
  const auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || p != v->data() + v->size()) return std::nullopt;
  return out;
}

PgnReader::PgnReader(std::istream& in, std::string source, PgnOptions options)
    : in_(in), source_(std::move(source)), options_(options) {}

int PgnReader::get() { return in_.get(); }
int PgnReader::peek() { return in_.peek(); }

bool PgnReader::next(GameRecord& out) {
  while (true) {
    std::string reason;
    GameRecord game;
    const Status st = read_game(game, reason);
    if (st == Status::End) return false;
    if (st == Status::Skip) {
      skipped_.push_back({game.source_id, reason});
      continue;
    }
    out = std::move(game);
    return true;
  }
}

PgnReader::Status PgnReader::read_game(GameRecord& out, std::string& reason) {
  while (is_space(peek())) get();
  if (peek() == EOF) return Status::End;

  ++seen_;
  out.source_id = source_ + "#" + std::to_string(seen_);
  bool malformed = false;

  // Tag pairs.
  while (true) {
    while (is_space(peek())) get();
    if (peek() != '[') break;
    get();
    std::string line;
    int c;
    bool in_quotes = false;
    while ((c = get()) != EOF) {
      if (c == '\\' && in_quotes) {
        const int escaped = get();
        if (escaped != EOF) line += static_cast<char>(escaped);
        continue;
      }
      if (c == '"') in_quotes = !in_quotes;
      if (c == ']' && !in_quotes) break;
      if (c == '\n' && !in_quotes) break;
      line += static_cast<char>(c);
    }
    const auto space = line.find(' ');
    const auto q1 = line.find('"');
    const auto q2 = line.rfind('"');
    if (space == std::string::npos || q1 == std::string::npos || q2 <= q1) {
      malformed = true;
      continue;
    }
    out.headers[line.substr(0, space)] = line.substr(q1 + 1, q2 - q1 - 1);
  }

  // Movetext.
  int depth = 0;
  bool ended = false;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    std::string t;
    t.swap(token);
    if (depth > 0) return;
    if (is_result(t)) {
      ended = true;
      return;
    }
    if (t[0] == '$') return;
    // Strip move numbers: "12.", "12...", "12.e4".
    std::size_t i = 0;
    if (std::isdigit(static_cast<unsigned char>(t[0]))) {
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
      if (i < t.size() && t[i] != '.') {
        malformed = true;
        return;
      }
      while (i < t.size() && t[i] == '.') ++i;
    }
    std::string move = t.substr(i);
    // Suffix annotations ("e4!?", "Qxf7??") are NAGs in disguise.
    while (!move.empty() && (move.back() == '!' || move.back() == '?')) move.pop_back();
    if (move.empty()) return;
    out.san_moves.push_back(std::move(move));
  };

  bool line_start = true;
  while (!ended) {
    const int c = peek();
    if (c == EOF) break;
    if (line_start && c == '[' && depth == 0) break;  // next game's tags, no result token
    get();
    if (line_start && c == '%') {
      while (peek() != EOF && get() != '\n') {
      }
      continue;
    }
    line_start = c == '\n';
    if (is_space(c)) {
      flush();
    } else if (c == '{') {
      flush();
      int d;
      while ((d = get()) != EOF && d != '}') {
      }
    } else if (c == ';') {
      flush();
      int d;
      while ((d = get()) != EOF && d != '\n') {
      }
      line_start = true;
    } else if (c == '(') {
      flush();
      ++depth;
    } else if (c == ')') {
      flush();
      if (depth > 0) --depth;
    } else {
      token += static_cast<char>(c);
    }
  }
  flush();

  if (malformed) {
    reason = "malformed PGN syntax";
    return Status::Skip;
  }
  if (const std::string* fen = out.header("FEN"); fen) {
    reason = "non-standard start position";
    return Status::Skip;
  }
  if (const std::string* variant = out.header("Variant"); variant && *variant != "Standard") {
    reason = "unsupported variant '" + *variant + "'";
    return Status::Skip;
  }
  if (out.san_moves.empty()) {
    reason = "empty movetext";
    return Status::Skip;
  }
  if (options_.validate_moves) {
    try {
      replay_check(out);
    } catch (const SanError& e) {
      reason = "illegal SAN token '" + e.token() + "'";
      return Status::Skip;
    }
  }
  return Status::Ok;
}

PgnParseResult parse_pgn(std::istream& in, const std::string& source, PgnOptions options) {
  PgnReader reader(in, source, options);
  PgnParseResult result;
  GameRecord g;
  while (reader.next(g)) result.games.push_back(std::move(g));
  result.skipped = reader.skipped();
  return result;
}

void replay_check(const GameRecord& game) {
  Board board = Board::initial();
  for (const std::string& san : game.san_moves) board = apply_move(board, parse_san(board, san));
}

std::string format_skip_report(std::span<const Diagnostic> skipped) {
  std::string out;
  for (const auto& d : skipped) out += d.source_id + "\t" + d.reason + "\n";
  return out;
}

}  // namespace bpchess::chess
