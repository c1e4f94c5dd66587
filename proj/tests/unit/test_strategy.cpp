#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bpchess/chess/movegen.hpp"
#include "bpchess/chess/san.hpp"
#include "bpchess/strategy/game_kernel.hpp"
#include "bpchess/strategy/schema.hpp"
#include "bpchess/strategy/threads.hpp"

using namespace bpchess;
using namespace bpchess::strategy;
using chess::Board;
using chess::Color;

namespace {

double reg(GameKernel& g, Color c, const std::string& name) { return g.snapshot().at(color_register(c, name)); }

GameKernel played(std::initializer_list<const char*> sans, bool advanced = false) {
  GameKernel g(StrategyConfig{advanced});
  for (const char* s : sans) g.play_san(s);
  return g;
}

const std::vector<std::string> kMonotone = {"pawn_moves",         "knight_moves", "bishop_moves",
                                            "rook_moves",         "queen_moves",  "attacks_made",
                                            "pins_made",          "captures_made", "useless_pawn_moves"};

}  // namespace

TEST(Counters, HandTrace) {
  GameKernel g = played({"e4", "e5", "Nf3"});
  EXPECT_EQ(reg(g, Color::White, "pawn_moves"), 1);
  EXPECT_EQ(reg(g, Color::Black, "pawn_moves"), 1);
  EXPECT_EQ(reg(g, Color::White, "knight_moves"), 1);
  EXPECT_EQ(reg(g, Color::Black, "knight_moves"), 0);
  EXPECT_EQ(g.snapshot().at(kPlyRegister), 3);
}

TEST(Counters, EmptyGameAllZero) {
  GameKernel g(StrategyConfig{});
  for (Color c : {Color::White, Color::Black})
    for (const auto& name : counter_registers()) EXPECT_EQ(reg(g, c, name), 0) << name;
}

TEST(Counters, CastleCountsAsRookMove) {
  GameKernel g(StrategyConfig{}, Board::from_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1"));
  const auto before = g.snapshot();
  g.play_san("O-O");
  const auto after = g.snapshot();
  for (const auto& name : counter_registers()) {
    const std::string key = color_register(Color::White, name);
    EXPECT_EQ(after.at(key) - before.at(key), name == "rook_moves" ? 1 : 0) << name;
  }
  EXPECT_EQ(after.at(color_register(Color::White, "castle_state")), 1);
}

TEST(Basic, CenterControl) {
  GameKernel fresh = played({});
  EXPECT_EQ(reg(fresh, Color::White, "center_control"), 0);
  EXPECT_EQ(reg(fresh, Color::Black, "center_control"), 0);
  GameKernel g = played({"e4"});
  EXPECT_EQ(reg(g, Color::White, "center_control"), 4);
}

TEST(Basic, WeakSquarePressure) {
  GameKernel g = played({"e4", "e5", "Bc4"});
  EXPECT_EQ(reg(g, Color::White, "weak_square_pressure"), 1);
}

TEST(Basic, UselessPawnMoves) {
  GameKernel flank = played({"h4"});
  GameKernel central = played({"e4"});
  EXPECT_EQ(reg(flank, Color::White, "useless_pawn_moves"), 1);
  EXPECT_EQ(reg(central, Color::White, "useless_pawn_moves"), 0);
}

TEST(Basic, EarlyQueen) {
  GameKernel g = played({"e4", "e5", "Qh5"});
  EXPECT_EQ(reg(g, Color::White, "early_queen_flag"), 1);
  EXPECT_EQ(reg(g, Color::Black, "early_queen_flag"), 0);
}

TEST(Basic, EarlyQueenThresholdConfigurable) {
  GameKernel g(StrategyConfig{false, 1});
  for (const char* s : {"e4", "e5", "Qh5"}) g.play_san(s);
  EXPECT_EQ(reg(g, Color::White, "early_queen_flag"), 0);
}

TEST(Basic, PawnWeaknesses) {
  GameKernel g = played({"e4", "e5", "Nf3", "Nc6", "Bb5", "a6", "Bxc6", "dxc6"});
  EXPECT_EQ(reg(g, Color::Black, "pawn_weaknesses"), 1);
}

TEST(Basic, QueensideCastleState) {
  GameKernel g(StrategyConfig{}, Board::from_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1"));
  g.play_san("O-O-O");
  EXPECT_EQ(reg(g, Color::White, "castle_state"), 2);
}

TEST(Advanced, PinsMade) {
  GameKernel g = played({"d4", "Nf6", "c4", "e6", "Bg5"}, true);
  EXPECT_EQ(reg(g, Color::White, "pins_made"), 1);
  EXPECT_EQ(reg(g, Color::Black, "pins_made"), 0);
}

TEST(Advanced, CapturesAndMaterial) {
  GameKernel g = played({"e4", "d5", "exd5"}, true);
  EXPECT_EQ(reg(g, Color::White, "captures_made"), 1);
  EXPECT_EQ(reg(g, Color::White, "material_points") - reg(g, Color::Black, "material_points"), 1);
}

TEST(Advanced, InitialDefended) {
  GameKernel g = played({}, true);
  EXPECT_EQ(reg(g, Color::White, "defended_pieces"), 5);
  EXPECT_EQ(reg(g, Color::Black, "defended_pieces"), 5);
}

TEST(Schema, Sizes) {
  const auto basic = make_schema(StrategyConfig{false});
  const auto adv = make_schema(StrategyConfig{true});
  EXPECT_EQ(basic.size(), 27u);
  EXPECT_EQ(adv.size(), 37u);
  EXPECT_EQ(basic.per_color(), 13u);
  EXPECT_EQ(adv.per_color(), 18u);
  EXPECT_EQ(basic.names.front(), "own_pawn_moves");
  EXPECT_EQ(basic.names[13], "opp_pawn_moves");
  EXPECT_EQ(basic.names.back(), "ply");
  EXPECT_EQ(std::set<std::string>(adv.names.begin(), adv.names.end()).size(), adv.names.size());
  EXPECT_NE(basic.version, adv.version);
  EXPECT_NE(basic.kernel_schema_id, adv.kernel_schema_id);
  for (const auto& n : basic.names) EXPECT_EQ(n.find("defended"), std::string::npos);
}

TEST(Schema, TextListsRanges) {
  const auto s = make_schema(StrategyConfig{false});
  const std::string text = schema_text(s);
  EXPECT_EQ(text.rfind("version " + s.version + "\n", 0), 0u);
  EXPECT_NE(text.find("own_castle_state:0..2\n"), std::string::npos);
  EXPECT_NE(text.find("own_pawn_moves:0..*\n"), std::string::npos);
}

TEST(Encode, FreshGameBasicIsZero) {
  const auto schema = make_schema(StrategyConfig{false});
  GameKernel g(StrategyConfig{false});
  const auto v = encode(g.snapshot(), schema);
  ASSERT_EQ(v.size(), 27u);
  for (float x : v) EXPECT_EQ(x, 0.0f);
}

TEST(Encode, Pure) {
  const auto schema = make_schema(StrategyConfig{true});
  GameKernel g = played({"e4", "c5"}, true);
  const auto snap = g.snapshot();
  EXPECT_EQ(encode(snap, schema), encode(snap, schema));
}

TEST(Encode, SchemaMismatchRejected) {
  const auto basic = make_schema(StrategyConfig{false});
  GameKernel g(StrategyConfig{true});
  EXPECT_THROW(encode(g.snapshot(), basic), std::invalid_argument);
  std::vector<float> small(5);
  GameKernel b(StrategyConfig{false});
  EXPECT_THROW(encode_into(b.snapshot(), basic, small), std::invalid_argument);
}

TEST(Encode, OrientationFollowsSideToMove) {
  const auto schema = make_schema(StrategyConfig{false});
  GameKernel g = played({"e4"});
  const auto v = encode(g.snapshot(), schema);
  // Black to move: own block is Black's, opponent block carries White's pawn move.
  EXPECT_EQ(v[0], 0.0f);
  EXPECT_EQ(v[13], 1.0f);
  EXPECT_EQ(v[26], 1.0f);
}

// Counters never decrease, registers stay in range, and forking then playing
// the actual move gives the next before-snapshot.
TEST(Properties, MonotoneRangedAndChained) {
  const auto schema = make_schema(StrategyConfig{true});
  std::mt19937 rng(17);
  const int games = 10000;
  for (int game = 0; game < games; ++game) {
    GameKernel g(StrategyConfig{true});
    auto prev = g.snapshot();
    for (int ply = 0; ply < 20; ++ply) {
      const auto succ = chess::legal_successors(g.board());
      if (succ.empty()) break;
      const auto& pick = succ[rng() % succ.size()];
      const std::string san = chess::to_san(g.board(), pick.move, succ);
      if (game % 50 == 0) {
        GameKernel branch = g.fork();
        branch.play(pick, san);
        std::vector<float> after(schema.size());
        encode_as(branch.snapshot(), schema, ply % 2 == 0 ? 1 : 0, after);
        g.play(pick, san);
        std::vector<float> before(schema.size());
        encode_as(g.snapshot(), schema, ply % 2 == 0 ? 1 : 0, before);
        ASSERT_EQ(after, before);
      } else {
        g.play(pick, san);
      }
      const auto snap = g.snapshot();
      for (Color c : {Color::White, Color::Black}) {
        for (const auto& name : kMonotone) {
          const std::string key = color_register(c, name);
          ASSERT_GE(snap.at(key), prev.at(key)) << key;
        }
      }
      const auto v = encode(snap, schema);
      for (std::size_t i = 0; i < v.size(); ++i) {
        ASSERT_GE(v[i], schema.lo[i]) << schema.names[i];
        if (schema.hi[i] != kUnbounded) ASSERT_LE(v[i], schema.hi[i]) << schema.names[i];
      }
      prev = snap;
    }
  }
}

TEST(Properties, MirrorSwapsBlocks) {
  const auto schema = make_schema(StrategyConfig{true});
  const std::size_t n = schema.per_color();
  std::mt19937 rng(23);
  for (int game = 0; game < 200; ++game) {
    Board start = Board::initial();
    for (int i = static_cast<int>(rng() % 12); i-- > 0;) {
      const auto moves = chess::legal_moves(start);
      if (moves.empty()) break;
      start = chess::apply_move(start, moves[rng() % moves.size()]);
    }
    if (chess::legal_moves(start).empty()) continue;
    GameKernel a(StrategyConfig{true}, start);
    GameKernel b(StrategyConfig{true}, chess::mirror(start));
    for (int ply = 0; ply < 12; ++ply) {
      std::vector<float> va(schema.size()), vb(schema.size());
      encode_as(a.snapshot(), schema, 0, va);
      encode_as(b.snapshot(), schema, 1, vb);
      for (std::size_t i = 0; i < 2 * n; ++i) {
        // The early-queen window counts full moves, which a colour swap shifts by a ply.
        if (schema.names[i].ends_with("early_queen_flag")) continue;
        ASSERT_EQ(va[i], vb[i]) << schema.names[i] << " at " << a.board().fen();
      }

      const auto sa = chess::legal_successors(a.board());
      if (sa.empty()) break;
      const auto& pick = sa[rng() % sa.size()];
      const auto sb = chess::legal_successors(b.board());
      const auto it = std::find_if(sb.begin(), sb.end(), [&](const chess::Successor& s) {
        return s.move.from == pick.move.from.flipped_rank() && s.move.to == pick.move.to.flipped_rank() &&
               s.move.promotion == pick.move.promotion;
      });
      ASSERT_NE(it, sb.end());
      a.play(pick, pick.move.uci());
      b.play(*it, it->move.uci());
    }
  }
}
