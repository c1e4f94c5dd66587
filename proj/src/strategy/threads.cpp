#include "bpchess/strategy/threads.hpp"

#include <algorithm>
#include <stdexcept>

#include "bpchess/chess/attacks.hpp"

namespace bpchess::strategy {

using chess::Color;
using chess::PieceType;

std::string color_register(Color c, const std::string& name) {
  return (c == Color::White ? "white." : "black.") + name;
}

// ---------------------------------------------------------------- simulator

GameSimulator::GameSimulator(int start_ply) : bp::BThread("game_simulator") {
  add_register(kPlyRegister, start_ply, 0, kUnbounded);
}

bp::SyncStatement GameSimulator::step(const bp::Event* last) {
  if (last && !queue_.empty() && *last == queue_.front()) {
    queue_.pop_front();
    ++reg(0).value;
  }
  bp::SyncStatement s;
  if (!queue_.empty()) s.requested.push_back(queue_.front());
  return s;
}

// ---------------------------------------------------------- strategy base

bp::SyncStatement StrategyThread::step(const bp::Event* last) {
  if (last) {
    if (last->kind() == bp::EventKind::Move) {
      const auto* ctx = dynamic_cast<const MoveContext*>(last->context());
      if (!ctx) throw std::invalid_argument("move event " + last->name() + " carries no board context");
      react(*ctx, pending_);
    } else if (const auto it = std::find(pending_.begin(), pending_.end(), *last); it != pending_.end()) {
      bp::Register& r = reg(register_index(last->name()));
      if (last->kind() == bp::EventKind::Increment) {
        r.value += last->value();
      } else {
        r.value = last->value();
      }
      pending_.erase(it);
    }
  }
  static const bp::EventSet kAllMoves = bp::EventSet::all_moves();
  return bp::SyncStatement{pending_, kAllMoves, bp::EventSet::none()};
}

void StrategyThread::add_color_registers(const std::string& name, std::int64_t white, std::int64_t black,
                                         std::int64_t lo, std::int64_t hi) {
  add_register(color_register(Color::White, name), white, lo, hi);
  add_register(color_register(Color::Black, name), black, lo, hi);
}

std::int64_t StrategyThread::value(Color c, const std::string& name) const {
  return registers()[register_index(color_register(c, name))].value;
}

void StrategyThread::set_if_changed(const std::string& name, std::int64_t white, std::int64_t black,
                                    std::vector<bp::Event>& out) const {
  if (value(Color::White, name) != white) out.push_back(bp::Event::set_state(color_register(Color::White, name), white));
  if (value(Color::Black, name) != black) out.push_back(bp::Event::set_state(color_register(Color::Black, name), black));
}

namespace {

// ------------------------------------------------------------- counters

class PieceCounter final : public StrategyThread {
 public:
  PieceCounter(std::string name, PieceType piece, std::string reg)
      : StrategyThread(std::move(name)), piece_(piece), reg_(std::move(reg)) {
    add_color_registers(reg_, 0, 0, 0, kUnbounded);
  }
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<PieceCounter>(*this); }

 protected:
  void react(const MoveContext& ctx, std::vector<bp::Event>& out) const override {
    // Castling counts for the rook; the king has no counter.
    const PieceType moved = ctx.move.is_castle() ? PieceType::Rook : ctx.move.piece;
    if (moved == piece_) out.push_back(bp::Event::increment(color_register(ctx.mover, reg_)));
  }

 private:
  PieceType piece_;
  std::string reg_;
};

// ---------------------------------------------- recomputed position facts

using FactFn = int (*)(const chess::ColorFacts&);

class FactThread final : public StrategyThread {
 public:
  FactThread(std::string name, std::string reg, FactFn fn, const chess::PositionFacts& start, std::int64_t hi)
      : StrategyThread(std::move(name)), reg_(std::move(reg)), fn_(fn) {
    add_color_registers(reg_, fn_(start[Color::White]), fn_(start[Color::Black]), 0, hi);
  }
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<FactThread>(*this); }

 protected:
  void react(const MoveContext& ctx, std::vector<bp::Event>& out) const override {
    const auto& f = *ctx.facts_after;
    set_if_changed(reg_, fn_(f[Color::White]), fn_(f[Color::Black]), out);
  }

 private:
  std::string reg_;
  FactFn fn_;
};

// --------------------------------------------------------- basic extras

class EarlyQueen final : public StrategyThread {
 public:
  explicit EarlyQueen(int early_moves) : StrategyThread("early_queen"), early_moves_(early_moves) {
    add_color_registers("early_queen_flag", 0, 0, 0, 1);
  }
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<EarlyQueen>(*this); }

 protected:
  void react(const MoveContext& ctx, std::vector<bp::Event>& out) const override {
    if (ctx.move.piece != PieceType::Queen || ctx.ply / 2 >= early_moves_) return;
    if (value(ctx.mover, "early_queen_flag") == 0) {
      out.push_back(bp::Event::set_state(color_register(ctx.mover, "early_queen_flag"), 1));
    }
  }

 private:
  int early_moves_;
};

class PawnMoveRole final : public StrategyThread {
 public:
  PawnMoveRole() : StrategyThread("pawn_move_role") { add_color_registers("useless_pawn_moves", 0, 0, 0, kUnbounded); }
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<PawnMoveRole>(*this); }

 protected:
  void react(const MoveContext& ctx, std::vector<bp::Event>& out) const override {
    if (ctx.move.piece != PieceType::Pawn) return;
    const chess::Bitboard reach = chess::bit(ctx.move.to) | chess::pawn_attacks(ctx.mover, ctx.move.to);
    if (!(reach & chess::kCentralSquares)) {
      out.push_back(bp::Event::increment(color_register(ctx.mover, "useless_pawn_moves")));
    }
  }
};

class Castling final : public StrategyThread {
 public:
  Castling() : StrategyThread("castling") { add_color_registers("castle_state", 0, 0, 0, 2); }
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<Castling>(*this); }

 protected:
  void react(const MoveContext& ctx, std::vector<bp::Event>& out) const override {
    if (ctx.move.flags & chess::kCastleKingside) {
      out.push_back(bp::Event::set_state(color_register(ctx.mover, "castle_state"), 1));
    } else if (ctx.move.flags & chess::kCastleQueenside) {
      out.push_back(bp::Event::set_state(color_register(ctx.mover, "castle_state"), 2));
    }
  }
};

// ------------------------------------------------------------- advanced

class AttackingAndPinning final : public StrategyThread {
 public:
  AttackingAndPinning() : StrategyThread("attacking_and_pinning") {
    add_color_registers("attacks_made", 0, 0, 0, kUnbounded);
    add_color_registers("pins_made", 0, 0, 0, kUnbounded);
  }
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<AttackingAndPinning>(*this); }

 protected:
  void react(const MoveContext& ctx, std::vector<bp::Event>& out) const override {
    const Color us = ctx.mover;
    const Color them = ~us;
    auto targets = [&](const chess::Board& b, const chess::PositionFacts& f) {
      return f[us].attacks & b.occupancy(them) & ~b.pieces(them, PieceType::Pawn);
    };
    const chess::Bitboard before = targets(ctx.before, *ctx.facts_before);
    const chess::Bitboard after = targets(ctx.after, *ctx.facts_after);
    if (after & ~before) out.push_back(bp::Event::increment(color_register(us, "attacks_made")));

    const auto& old_pins = ctx.facts_before->pins;
    for (const chess::Pin& p : ctx.facts_after->pins) {
      if (ctx.after.at(p.pinner)->color != us) continue;
      if (std::find(old_pins.begin(), old_pins.end(), p) == old_pins.end()) {
        out.push_back(bp::Event::increment(color_register(us, "pins_made")));
        break;
      }
    }
  }
};

class Trading final : public StrategyThread {
 public:
  explicit Trading(const chess::PositionFacts& start) : StrategyThread("trading") {
    add_color_registers("captures_made", 0, 0, 0, kUnbounded);
    add_color_registers("material_points", start[Color::White].material, start[Color::Black].material, 0, 103);
  }
  std::unique_ptr<bp::BThread> clone() const override { return std::make_unique<Trading>(*this); }

 protected:
  void react(const MoveContext& ctx, std::vector<bp::Event>& out) const override {
    if (ctx.move.is_capture()) out.push_back(bp::Event::increment(color_register(ctx.mover, "captures_made")));
    const auto& f = *ctx.facts_after;
    set_if_changed("material_points", f[Color::White].material, f[Color::Black].material, out);
  }
};

}  // namespace

std::vector<std::unique_ptr<bp::BThread>> counter_threads() {
  std::vector<std::unique_ptr<bp::BThread>> out;
  out.push_back(std::make_unique<PieceCounter>("pawn_counter", PieceType::Pawn, "pawn_moves"));
  out.push_back(std::make_unique<PieceCounter>("knight_counter", PieceType::Knight, "knight_moves"));
  out.push_back(std::make_unique<PieceCounter>("bishop_counter", PieceType::Bishop, "bishop_moves"));
  out.push_back(std::make_unique<PieceCounter>("rook_counter", PieceType::Rook, "rook_moves"));
  out.push_back(std::make_unique<PieceCounter>("queen_counter", PieceType::Queen, "queen_moves"));
  return out;
}

std::vector<std::unique_ptr<bp::BThread>> basic_strategy_threads(const chess::Board& start,
                                                                 const StrategyConfig& config) {
  const chess::PositionFacts f = chess::position_facts(start);
  std::vector<std::unique_ptr<bp::BThread>> out;
  out.push_back(std::make_unique<FactThread>(
      "control_center", "center_control", [](const chess::ColorFacts& c) { return c.center_control; }, f, 8));
  out.push_back(std::make_unique<FactThread>(
      "development", "developed", [](const chess::ColorFacts& c) { return c.developed; }, f, 15));
  out.push_back(std::make_unique<FactThread>(
      "spatial_advantage", "space", [](const chess::ColorFacts& c) { return c.space; }, f, 32));
  out.push_back(std::make_unique<FactThread>(
      "weak_square_attack", "weak_square_pressure",
      [](const chess::ColorFacts& c) { return c.weak_square_attackers; }, f, 16));
  out.push_back(std::make_unique<FactThread>(
      "pawn_structure", "pawn_weaknesses",
      [](const chess::ColorFacts& c) { return c.doubled_pawns + c.isolated_pawns; }, f, 15));
  out.push_back(std::make_unique<EarlyQueen>(config.early_queen_moves));
  out.push_back(std::make_unique<PawnMoveRole>());
  out.push_back(std::make_unique<Castling>());
  return out;
}

std::vector<std::unique_ptr<bp::BThread>> advanced_strategy_threads(const chess::Board& start) {
  const chess::PositionFacts f = chess::position_facts(start);
  std::vector<std::unique_ptr<bp::BThread>> out;
  out.push_back(std::make_unique<FactThread>(
      "defending", "defended_pieces", [](const chess::ColorFacts& c) { return c.defended; }, f, 15));
  out.push_back(std::make_unique<AttackingAndPinning>());
  out.push_back(std::make_unique<Trading>(f));
  return out;
}

}  // namespace bpchess::strategy
