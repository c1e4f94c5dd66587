#include "bpchess/strategy/game_kernel.hpp"

#include "bpchess/chess/san.hpp"
#include "bpchess/strategy/threads.hpp"

namespace bpchess::strategy {

GameKernel::GameKernel(const StrategyConfig& config, const chess::Board& start)
    : board_(start), facts_(std::make_shared<const chess::PositionFacts>(chess::position_facts(start))) {
  start.validate();
  simulator_ = kernel_.add(std::make_unique<GameSimulator>(start.ply_index()));
  for (auto& t : counter_threads()) kernel_.add(std::move(t));
  for (auto& t : basic_strategy_threads(start, config)) kernel_.add(std::move(t));
  if (config.advanced) {
    for (auto& t : advanced_strategy_threads(start)) kernel_.add(std::move(t));
  }
  kernel_.start();
}

std::vector<bp::Event> GameKernel::play(const chess::Successor& successor, std::string san) {
  auto ctx = std::make_shared<MoveContext>();
  ctx->before = board_;
  ctx->after = successor.board;
  ctx->move = successor.move;
  ctx->mover = board_.side_to_move();
  ctx->ply = board_.ply_index();
  ctx->facts_before = facts_;
  ctx->facts_after = std::make_shared<const chess::PositionFacts>(chess::position_facts(successor.board));

  const std::uint32_t id = successor.move.id();
  kernel_.get<GameSimulator>("game_simulator").enqueue(bp::Event::move(std::move(san), id, ctx));
  kernel_.refresh(simulator_);
  auto trace = kernel_.super_step();
  board_ = ctx->after;
  facts_ = ctx->facts_after;
  return trace;
}

std::vector<bp::Event> GameKernel::play_san(std::string_view san) {
  const chess::Move m = chess::parse_san(board_, san);
  for (auto& s : chess::legal_successors(board_)) {
    if (s.move == m) return play(s, chess::to_san(board_, m));
  }
  throw chess::ChessError("unreachable: parsed SAN not among successors");
}

}  // namespace bpchess::strategy
