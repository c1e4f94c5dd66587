#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "bpchess/bp/kernel.hpp"
#include "bpchess/chess/board.hpp"
#include "bpchess/chess/facts.hpp"
#include "bpchess/chess/movegen.hpp"
#include "bpchess/strategy/schema.hpp"

namespace bpchess::strategy {

/// A b-program for one game: simulator, counters and strategies over a
/// board that advances with each played move.
class GameKernel {
 public:
  explicit GameKernel(const StrategyConfig& config, const chess::Board& start = chess::Board::initial());

  const chess::Board& board() const { return board_; }
  const std::shared_ptr<const chess::PositionFacts>& facts() const { return facts_; }

  /// Plays a legal move given with its resulting board; runs one super-step
  /// and returns its trace. `san` becomes the Move event's name.
  std::vector<bp::Event> play(const chess::Successor& successor, std::string san);
  /// Convenience: resolves the SAN token first.
  std::vector<bp::Event> play_san(std::string_view san);

  bp::KernelSnapshot snapshot() { return kernel_.snapshot(); }
  GameKernel fork() const { return *this; }
  bp::Kernel& kernel() { return kernel_; }

 private:
  bp::Kernel kernel_;
  std::size_t simulator_ = 0;
  chess::Board board_;
  std::shared_ptr<const chess::PositionFacts> facts_;
};

}  // namespace bpchess::strategy
