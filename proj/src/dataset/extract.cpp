#include "bpchess/dataset/extract.hpp"

#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "bpchess/chess/movegen.hpp"
#include "bpchess/chess/san.hpp"
#include "bpchess/strategy/game_kernel.hpp"

namespace bpchess::dataset {

Dataset make_dataset(const strategy::FeatureSchema& schema, int bucket) {
  Dataset d;
  d.schema_version = schema.version;
  d.advanced = schema.advanced;
  d.bucket = bucket;
  d.feature_names = schema.names;
  return d;
}

Dataset extract_rows(const chess::GameRecord& record, const strategy::FeatureSchema& schema,
                     const strategy::StrategyConfig& config, int bucket) {
  Dataset out = make_dataset(schema, bucket);
  const std::int32_t gid = out.add_game(record.source_id);
  const std::size_t w = schema.size();
  std::vector<float> features(2 * w);

  strategy::GameKernel game(config);
  for (std::size_t p = 0; p < record.san_moves.size(); ++p) {
    const chess::Board& board = game.board();
    strategy::encode_into(game.snapshot(), schema, std::span(features).first(w));
    const chess::Move played = chess::parse_san(board, record.san_moves[p]);
    const auto successors = chess::legal_successors(board);

    std::optional<strategy::GameKernel> next;
    for (const auto& s : successors) {
      strategy::GameKernel branch = game.fork();
      std::string san = chess::to_san(board, s.move, successors);
      branch.play(s, san);
      strategy::encode_into(branch.snapshot(), schema, std::span(features).last(w));
      const bool is_played = s.move == played;
      out.push_row(features, is_played ? 1.0 : 0.0, gid, static_cast<std::int32_t>(p), std::move(san));
      if (is_played) next.emplace(std::move(branch));
    }
    game = std::move(*next);
  }
  return out;
}

ExtractResult extract_all(const std::vector<chess::GameRecord>& games, const strategy::StrategyConfig& config,
                          int bucket, unsigned workers) {
  const strategy::FeatureSchema schema = strategy::make_schema(config);
  ExtractResult result{make_dataset(schema, bucket), {}, 0};
  workers = std::max(1u, workers);

  // Chunked so that at most one chunk of per-game results is alive at a time.
  const std::size_t chunk = std::max<std::size_t>(64, 16 * workers);
  for (std::size_t start = 0; start < games.size(); start += chunk) {
    const std::size_t end = std::min(games.size(), start + chunk);
    std::vector<Dataset> parts(end - start);
    std::vector<std::string> errors(end - start);
    std::atomic<std::size_t> cursor{start};
    auto work = [&] {
      for (std::size_t i; (i = cursor.fetch_add(1)) < end;) {
        try {
          parts[i - start] = extract_rows(games[i], schema, config, bucket);
        } catch (const std::exception& e) {
          errors[i - start] = std::string("replay failed: ") + e.what();
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!errors[i].empty()) {
        result.dropped.push_back({games[start + i].source_id, errors[i]});
        continue;
      }
      result.data.append(parts[i]);
      ++result.games;
    }
  }
  return result;
}

}  // namespace bpchess::dataset
