#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bpchess/chess/pgn.hpp"
#include "bpchess/dataset/dataset.hpp"
#include "bpchess/strategy/schema.hpp"

namespace bpchess::dataset {

/// Layout-only dataset for a schema.
Dataset make_dataset(const strategy::FeatureSchema& schema, int bucket = 0);

/// One row per legal move at every ply of the (already truncated) game,
/// label 1 on the move actually played. Throws chess::ChessError or
/// chess::SanError when the game does not replay.
Dataset extract_rows(const chess::GameRecord& game, const strategy::FeatureSchema& schema,
                     const strategy::StrategyConfig& config, int bucket = 0);

struct ExtractResult {
  Dataset data;
  std::vector<chess::Diagnostic> dropped;
  std::size_t games = 0;  // games contributing rows
};

/// extract_rows over many games with `workers` threads; rows are merged in
/// input order, so the result does not depend on the worker count.
ExtractResult extract_all(const std::vector<chess::GameRecord>& games, const strategy::StrategyConfig& config,
                          int bucket = 0, unsigned workers = 1);

}  // namespace bpchess::dataset
