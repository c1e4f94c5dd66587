#pragma once

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bpchess::chess {

/// A parsed game: tag pairs and the main-line SAN moves.
struct GameRecord {
  std::map<std::string, std::string> headers;
  std::vector<std::string> san_moves;
  std::string source_id;

  const std::string* header(const std::string& key) const {
    const auto it = headers.find(key);
    return it == headers.end() ? nullptr : &it->second;
  }
  /// Integer header value; nullopt when absent or not an integer.
  std::optional<int> int_header(const std::string& key) const;
};

/// One skipped game: where it came from and why it was dropped.
struct Diagnostic {
  std::string source_id;
  std::string reason;
};

struct PgnOptions {
  /// Replay each game's SAN list and skip games containing illegal tokens.
  bool validate_moves = true;
};

struct PgnParseResult {
  std::vector<GameRecord> games;
  std::vector<Diagnostic> skipped;
};

/// Streaming reader over concatenated PGN games. Comments, variations, NAGs
/// and move numbers are dropped; a result token ends the movetext.
class PgnReader {
 public:
  PgnReader(std::istream& in, std::string source, PgnOptions options = {});

  /// Reads the next accepted game into `out`. Games that fail to parse are
  /// recorded in skipped() and passed over. Returns false at end of input.
  bool next(GameRecord& out);

  const std::vector<Diagnostic>& skipped() const { return skipped_; }
  /// Number of games seen so far, accepted or skipped.
  std::size_t games_seen() const { return seen_; }

 private:
  enum class Status { Ok, Skip, End };
  Status read_game(GameRecord& out, std::string& reason);
  int get();
  int peek();

  std::istream& in_;
  std::string source_;
  PgnOptions options_;
  std::vector<Diagnostic> skipped_;
  std::size_t seen_ = 0;
};

/// Reads every game in the stream.
PgnParseResult parse_pgn(std::istream& in, const std::string& source = "<stream>", PgnOptions options = {});

/// Replays the SAN list from the initial position; throws SanError naming
/// the first bad token.
void replay_check(const GameRecord& game);

/// One line per skip: "<source id>\t<reason>".
std::string format_skip_report(std::span<const Diagnostic> skipped);

}  // namespace bpchess::chess
