#pragma once

#include <deque>
#include <memory>
#include <vector>

#include "bpchess/bp/kernel.hpp"
#include "bpchess/chess/board.hpp"
#include "bpchess/chess/facts.hpp"
#include "bpchess/chess/types.hpp"
#include "bpchess/strategy/schema.hpp"

namespace bpchess::strategy {

/// Context carried by Move events: the boards around the move and their facts.
struct MoveContext : bp::EventContext {
  chess::Board before;
  chess::Board after;
  chess::Move move;
  chess::Color mover = chess::Color::White;
  int ply = 0;  // ply index of the move itself
  std::shared_ptr<const chess::PositionFacts> facts_before;
  std::shared_ptr<const chess::PositionFacts> facts_after;
};

/// "white.<name>" / "black.<name>".
std::string color_register(chess::Color c, const std::string& name);

inline constexpr const char* kPlyRegister = "ply_index";

/// Requests the moves of the replayed game one at a time and counts plies.
class GameSimulator : public bp::BThread {
 public:
  explicit GameSimulator(int start_ply = 0);
  void enqueue(bp::Event move) { queue_.push_back(std::move(move)); }
  bp::SyncStatement step(const bp::Event* last) override;
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<GameSimulator>(*this); }

 private:
  std::deque<bp::Event> queue_;
};

/// Shared protocol of the strategy b-threads: watch every move, react by
/// requesting Increment/SetState events on own registers, and apply them
/// when they are selected.
class StrategyThread : public bp::BThread {
 public:
  bp::SyncStatement step(const bp::Event* last) override;

 protected:
  using bp::BThread::BThread;
  virtual void react(const MoveContext& ctx, std::vector<bp::Event>& out) const = 0;

  /// Adds white.<name> and black.<name>.
  void add_color_registers(const std::string& name, std::int64_t white, std::int64_t black, std::int64_t lo,
                           std::int64_t hi);
  std::int64_t value(chess::Color c, const std::string& name) const;
  /// Emits SetState for both colours whose register differs from `values`.
  void set_if_changed(const std::string& name, std::int64_t white, std::int64_t black,
                      std::vector<bp::Event>& out) const;

 private:
  std::vector<bp::Event> pending_;
};

/// The five piece-move counters (pawn, knight, bishop, rook, queen).
std::vector<std::unique_ptr<bp::BThread>> counter_threads();
/// The eight basic opening strategies.
std::vector<std::unique_ptr<bp::BThread>> basic_strategy_threads(const chess::Board& start,
                                                                 const StrategyConfig& config = {});
/// Defending, attacking-and-pinning, trading.
std::vector<std::unique_ptr<bp::BThread>> advanced_strategy_threads(const chess::Board& start);

}  // namespace bpchess::strategy
