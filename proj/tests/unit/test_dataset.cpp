#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <random>
#include <sstream>

#include "bpchess/chess/pgn.hpp"
#include "bpchess/dataset/aggregate.hpp"
#include "bpchess/dataset/csv_io.hpp"
#include "bpchess/dataset/dataset.hpp"
#include "bpchess/dataset/extract.hpp"
#include "bpchess/dataset/filter.hpp"
#include "bpchess/dataset/opening.hpp"
#include "bpchess/dataset/smote.hpp"
#include "bpchess/dataset/split.hpp"
#include "bpchess/strategy/schema.hpp"

using namespace bpchess;
using namespace bpchess::dataset;

namespace {

chess::GameRecord record(std::map<std::string, std::string> headers, std::vector<std::string> moves = {"e4"}) {
  chess::GameRecord g;
  g.headers = std::move(headers);
  g.san_moves = std::move(moves);
  g.source_id = "g";
  return g;
}

std::map<std::string, std::string> good_headers() {
  return {{"TimeControl", "600+0"}, {"WhiteElo", "1250"}, {"BlackElo", "1280"},
          {"Result", "1-0"},        {"Termination", "Normal"}};
}

std::vector<std::string> split_moves(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// Two-feature toy dataset: `minority` rows labelled 1, `majority` rows labelled 0.
Dataset toy(int minority, int majority, std::uint32_t seed = 1) {
  Dataset d;
  d.schema_version = "toy";
  d.feature_names = {"a", "b"};
  std::mt19937 rng(seed);
  std::normal_distribution<float> n(0.0f, 1.0f);
  std::int32_t g = -1;
  for (int i = 0; i < minority + majority; ++i) {
    const bool pos = i < minority;
    if (i % 5 == 0) g = d.add_game("game" + std::to_string(i / 5));
    const float f[4] = {n(rng) + (pos ? 3.0f : 0.0f), n(rng), n(rng) * 10.0f, n(rng)};
    d.push_row(f, pos ? 1.0 : 0.0, g, i % 5, "m" + std::to_string(i));
  }
  return d;
}

std::vector<chess::GameRecord> fixture_games() {
  std::ifstream in(std::string(BPCHESS_FIXTURE_DIR) + "/fixture50.pgn");
  return chess::parse_pgn(in, "fixture50.pgn").games;
}

}  // namespace

TEST(Filter, Examples) {
  const FilterConfig cfg;
  EXPECT_FALSE(rejection_reason(record(good_headers()), cfg));
  auto blitz = good_headers();
  blitz["TimeControl"] = "300+3";
  EXPECT_TRUE(rejection_reason(record(blitz), cfg));
  auto unfinished = good_headers();
  unfinished["Result"] = "*";
  EXPECT_TRUE(rejection_reason(record(unfinished), cfg));
}

TEST(Filter, BoundsAndMissingHeaders) {
  const FilterConfig cfg;
  auto h = good_headers();
  h["WhiteElo"] = "1300";
  EXPECT_TRUE(rejection_reason(record(h), cfg));
  h["WhiteElo"] = "1200";
  EXPECT_FALSE(rejection_reason(record(h), cfg));
  h["TimeControl"] = "1200+0";
  EXPECT_FALSE(rejection_reason(record(h), cfg));
  h["TimeControl"] = "1201+0";
  EXPECT_TRUE(rejection_reason(record(h), cfg));
  for (const char* key : {"TimeControl", "WhiteElo", "BlackElo", "Result"}) {
    auto m = good_headers();
    m.erase(key);
    const auto why = rejection_reason(record(m), cfg);
    ASSERT_TRUE(why) << key;
    EXPECT_NE(why->find(key), std::string::npos) << *why;
  }
  auto abandoned = good_headers();
  abandoned["Termination"] = "Abandoned";
  EXPECT_TRUE(rejection_reason(record(abandoned), cfg));
}

TEST(Filter, TimeControlBase) {
  EXPECT_EQ(time_control_base("600+5"), 600);
  EXPECT_EQ(time_control_base("900"), 900);
  EXPECT_FALSE(time_control_base("-"));
  EXPECT_FALSE(time_control_base("?"));
  EXPECT_FALSE(time_control_base("abc+1"));
}

TEST(Filter, ConfigValidation) {
  FilterConfig c;
  EXPECT_NO_THROW(c.validate());
  c.elo_hi = c.elo_lo;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = FilterConfig{};
  c.time_base_min = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = FilterConfig{};
  c.time_base_max = 500;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

// Hand audit of the fixture: 35 games are in-bucket rapid games; the illegal
// one is dropped by the parser, the other 14 fail one predicate each.
TEST(Filter, FixtureAudit) {
  auto games = fixture_games();
  ASSERT_EQ(games.size(), 49u);
  const auto r = filter_games(games, FilterConfig{});
  EXPECT_EQ(r.passed, 35u);
  EXPECT_EQ(r.games.size(), 35u);
  EXPECT_EQ(r.dropped.size(), 14u);
}

TEST(Filter, SamplingIsSeededAndOrdered) {
  auto games = fixture_games();
  FilterConfig c;
  c.max_games = 10;
  const auto a = filter_games(games, c);
  const auto b = filter_games(games, c);
  ASSERT_EQ(a.games.size(), 10u);
  EXPECT_EQ(a.passed, 35u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(a.games[i].source_id, b.games[i].source_id);
  for (std::size_t i = 1; i < 10; ++i) {
    EXPECT_LT(std::stoi(a.games[i - 1].source_id.substr(a.games[i - 1].source_id.find('#') + 1)),
              std::stoi(a.games[i].source_id.substr(a.games[i].source_id.find('#') + 1)));
  }
  c.seed = 43;
  const auto other = filter_games(games, c);
  bool differs = false;
  for (std::size_t i = 0; i < 10; ++i) differs = differs || other.games[i].source_id != a.games[i].source_id;
  EXPECT_TRUE(differs);
}

TEST(Opening, BothCastleEndsAfterSecondCastle) {
  // White castles on move 6, Black on move 9.
  const auto moves = split_moves(
      "e4 e5 Nf3 Nc6 Bc4 Bc5 d3 d6 Nc3 Nf6 O-O a6 a3 h6 h3 Be6 Be3 O-O Re1 Re8 Qd2 Qd7");
  const auto g = record({}, moves);
  EXPECT_EQ(opening_length(g), 18u);
  EXPECT_EQ(truncate_opening(g).san_moves.size(), 18u);
  EXPECT_EQ(truncate_opening(g).san_moves.back(), "O-O");
}

TEST(Opening, NoCastleKeepsTwenty) {
  std::vector<std::string> moves;
  for (int i = 0; i < 20; ++i) {
    for (const char* m : {"Nf3", "Nf6", "Ng1", "Ng8"}) moves.push_back(m);
  }
  EXPECT_EQ(opening_length(record({}, moves)), 20u);
  const auto seven = std::vector<std::string>(moves.begin(), moves.begin() + 7);
  EXPECT_EQ(opening_length(record({}, seven)), 7u);
}

TEST(Opening, OneSideCastlingKeepsTwenty) {
  const auto moves = split_moves(
      "e4 e5 Nf3 Nc6 Bc4 Bc5 O-O d6 d3 h6 h3 a6 a3 Nf6 Nc3 Be6 Be3 Qd7 Qd2 Bxc4 dxc4 Bxe3");
  EXPECT_EQ(opening_length(record({}, moves)), 20u);
}

TEST(Extract, InitialPlyHasTwentyRowsOneLabelled) {
  const strategy::StrategyConfig cfg{};
  const auto schema = strategy::make_schema(cfg);
  const auto d = extract_rows(record({}, {"e4"}), schema, cfg);
  ASSERT_EQ(d.rows(), 20u);
  EXPECT_EQ(d.count_label(1.0), 1u);
  EXPECT_EQ(d.width(), 54u);
  std::size_t played = 0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (d.label[i] == 1.0) played = i;
    for (float x : d.before(i)) EXPECT_EQ(x, 0.0f);
  }
  EXPECT_EQ(d.move[played], "e4");
}

TEST(Extract, OneLabelPerPlyAndChaining) {
  const strategy::StrategyConfig cfg{true};
  const auto schema = strategy::make_schema(cfg);
  const auto moves = split_moves("e4 c5 Nf3 d6 d4 cxd4 Nxd4 Nf6 Nc3 a6");
  const auto d = extract_rows(record({}, moves), schema, cfg);
  std::map<int, std::size_t> ones;
  std::map<int, std::size_t> played_row;
  std::map<int, std::size_t> first_row;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (!first_row.count(d.ply[i])) first_row[d.ply[i]] = i;
    if (d.label[i] == 1.0) {
      ++ones[d.ply[i]];
      played_row[d.ply[i]] = i;
    }
  }
  ASSERT_EQ(ones.size(), moves.size());
  for (auto [p, n] : ones) EXPECT_EQ(n, 1u);
  // The after-vector of the played move is the next before-vector, seen from
  // the next mover's side.
  for (int p = 0; p + 1 < static_cast<int>(moves.size()); ++p) {
    const auto after = d.after(played_row[p]);
    const auto next = d.before(first_row[p + 1]);
    ASSERT_TRUE(std::equal(after.begin(), after.end(), next.begin())) << "ply " << p;
  }
}

TEST(Extract, ParallelMatchesSerial) {
  auto games = filter_games(fixture_games(), FilterConfig{}).games;
  games.resize(6);
  for (auto& g : games) g = truncate_opening(std::move(g));
  const auto a = extract_all(games, {}, 1200, 1);
  const auto b = extract_all(games, {}, 1200, 3);
  EXPECT_EQ(a.data.x, b.data.x);
  EXPECT_EQ(a.data.label, b.data.label);
  EXPECT_EQ(a.games, 6u);
}

TEST(Extract, ReplayFailureDropsGame) {
  auto bad = record({}, {"e4", "Ke3"});
  bad.source_id = "bad";
  const auto r = extract_all({bad, record({}, {"d4"})}, {}, 0, 1);
  EXPECT_EQ(r.games, 1u);
  ASSERT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped[0].source_id, "bad");
}

TEST(Csv, RoundTripAndHeader) {
  const strategy::StrategyConfig cfg{};
  const auto schema = strategy::make_schema(cfg);
  auto d = extract_rows(record({}, split_moves("e4 e5 Nf3")), schema, cfg, 1200);
  d.label[3] = 0.1;  // non-trivial label survives exactly
  std::stringstream s;
  write_dataset(s, d);
  const std::string text = s.str();
  std::istringstream lines(text);
  std::string meta, header;
  std::getline(lines, meta);
  std::getline(lines, header);
  EXPECT_EQ(meta.rfind("# schema=" + schema.version, 0), 0u);
  EXPECT_EQ(std::count(header.begin(), header.end(), ',') + 1, 27 * 2 + 4);
  EXPECT_EQ(header.rfind("game_id,ply,move,before_own_pawn_moves", 0), 0u);

  std::istringstream in(text);
  const Dataset r = read_dataset(in, schema.version);
  EXPECT_EQ(r.x, d.x);
  EXPECT_EQ(r.label, d.label);
  EXPECT_EQ(r.move, d.move);
  EXPECT_EQ(r.ply, d.ply);
  EXPECT_EQ(r.game_ids, d.game_ids);
  EXPECT_EQ(r.bucket, 1200);
  EXPECT_EQ(r.feature_names, d.feature_names);
}

TEST(Csv, VersionMismatchAndUnknownColumn) {
  const strategy::StrategyConfig cfg{};
  const auto schema = strategy::make_schema(cfg);
  const auto d = extract_rows(record({}, {"e4"}), schema, cfg);
  std::stringstream s;
  write_dataset(s, d);
  std::istringstream in1(s.str());
  EXPECT_THROW(read_dataset(in1, std::string("other")), DatasetFormatError);

  std::string text = s.str();
  const auto pos = text.find("before_own_space");
  text.replace(pos, std::string("before_own_space").size(), "before_own_spice");
  std::istringstream in2(text);
  try {
    read_dataset(in2);
    FAIL();
  } catch (const DatasetFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("before_own_spice"), std::string::npos);
  }
}

TEST(Smote, BalancesTenToNinety) {
  const Dataset d = toy(10, 90);
  const auto r = smote_balance(d, {5, 7});
  EXPECT_EQ(r.data.count_label(1.0), 90u);
  EXPECT_EQ(r.data.count_label(0.0), 90u);
  EXPECT_EQ(r.k_used, 5);
  ASSERT_EQ(r.parents.size(), 80u);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(r.data.synthetic[i], 0);
  for (std::size_t s = 0; s < r.parents.size(); ++s) {
    const std::size_t row = 100 + s;
    EXPECT_EQ(r.data.synthetic[row], 1);
    const auto [base, nb] = r.parents[s];
    EXPECT_EQ(base, s % 10);  // round-robin
    EXPECT_EQ(d.label[base], 1.0);
    EXPECT_EQ(d.label[nb], 1.0);
    EXPECT_NE(base, nb);
    // Convex combination on one segment: the same u for every coordinate.
    const auto a = d.row(base), b = d.row(nb), x = r.data.row(row);
    double u = -1;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double lo = std::min(a[j], b[j]), hi = std::max(a[j], b[j]);
      EXPECT_GE(x[j], lo - 1e-5);
      EXPECT_LE(x[j], hi + 1e-5);
      if (std::abs(b[j] - a[j]) > 1e-3) {
        const double uj = (x[j] - a[j]) / (b[j] - a[j]);
        if (u < 0) u = uj;
        EXPECT_NEAR(uj, u, 1e-3);
      }
    }
  }
}

TEST(Smote, NeighboursAreNearestStandardised) {
  const Dataset d = toy(12, 30, 4);
  const auto r = smote_balance(d, {3, 1});
  // Brute-force the distances after whole-dataset standardisation.
  const std::size_t w = d.width();
  std::vector<double> mean(w, 0), sd(w, 0);
  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < d.rows(); ++i)
    if (d.label[i] == 1.0) minority.push_back(i);
  for (std::size_t j = 0; j < w; ++j) {
    for (std::size_t i = 0; i < d.rows(); ++i) mean[j] += d.row(i)[j];
    mean[j] /= d.rows();
    for (std::size_t i = 0; i < d.rows(); ++i) sd[j] += std::pow(d.row(i)[j] - mean[j], 2);
    sd[j] = std::sqrt(sd[j] / d.rows());
    if (sd[j] == 0) sd[j] = 1;
  }
  auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0;
    for (std::size_t j = 0; j < w; ++j) s += std::pow((d.row(a)[j] - d.row(b)[j]) / sd[j], 2);
    return s;
  };
  for (auto [base, nb] : r.parents) {
    std::vector<double> ds;
    for (auto i : minority)
      if (i != base) ds.push_back(dist(base, i));
    std::sort(ds.begin(), ds.end());
    EXPECT_LE(dist(base, nb), ds[2] * (1 + 1e-4) + 1e-6);
  }
}

TEST(Smote, DeterministicAndClamped) {
  const Dataset d = toy(3, 20);
  const auto a = smote_balance(d, {5, 9});
  const auto b = smote_balance(d, {5, 9});
  EXPECT_EQ(a.data.x, b.data.x);
  EXPECT_EQ(a.k_used, 2);
  EXPECT_FALSE(a.warnings.empty());
  EXPECT_THROW(smote_balance(toy(1, 20)), std::invalid_argument);
  const auto balanced = smote_balance(toy(10, 10));
  EXPECT_EQ(balanced.data.rows(), 20u);
}

TEST(Aggregate, FourOfTen) {
  Dataset d;
  d.schema_version = "toy";
  d.feature_names = {"f"};
  for (int occ = 0; occ < 10; ++occ) {
    const auto g = d.add_game("g" + std::to_string(occ));
    const float m[2] = {7.0f, 1.0f}, other[2] = {7.0f, 2.0f};
    d.push_row(m, occ < 4 ? 1.0 : 0.0, g, 0, "m");
    d.push_row(other, occ < 4 ? 0.0 : 1.0, g, 0, "n");
  }
  const Dataset a = aggregate_probabilities(d);
  ASSERT_EQ(a.rows(), 2u);
  EXPECT_DOUBLE_EQ(a.label[0], 0.4);
  EXPECT_DOUBLE_EQ(a.label[1], 0.6);
  EXPECT_EQ(a.move[0], "m");
}

TEST(Aggregate, SingleOccurrenceAndNormalisation) {
  auto games = filter_games(fixture_games(), FilterConfig{}).games;
  for (auto& g : games) g = truncate_opening(std::move(g));
  const auto d = extract_all(games, {}, 1200).data;
  const Dataset a = aggregate_probabilities(d);
  EXPECT_LE(a.rows(), d.rows());
  std::map<std::vector<float>, double> sums;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ASSERT_GE(a.label[i], 0.0);
    ASSERT_LE(a.label[i], 1.0);
    const auto b = a.before(i);
    sums[std::vector<float>(b.begin(), b.end())] += a.label[i];
  }
  for (auto& [k, s] : sums) EXPECT_NEAR(s, 1.0, 1e-9);
  // The start position is shared by every game: its labels are frequencies.
  EXPECT_EQ(a.rows() < d.rows(), true);
}

TEST(Split, ByGameNoLeakage) {
  const Dataset d = toy(30, 70);
  const auto s = split_by_game(d, 0.2, 5);
  EXPECT_EQ(s.train.size() + s.test.size(), d.rows());
  std::set<std::int32_t> train_games, test_games;
  for (auto i : s.train) train_games.insert(d.game[i]);
  for (auto i : s.test) test_games.insert(d.game[i]);
  for (auto g : test_games) EXPECT_FALSE(train_games.count(g));
  EXPECT_EQ(test_games.size(), 4u);  // 20 games, 20%
  const auto again = split_by_game(d, 0.2, 5);
  EXPECT_EQ(again.test, s.test);
}

TEST(Split, SyntheticNeverInTest) {
  const auto r = smote_balance(toy(10, 90));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = split_by_game(r.data, 0.3, seed);
    for (auto i : s.test) ASSERT_EQ(r.data.synthetic[i], 0);
  }
  const auto u = undersample_balanced(r.data, 1);
  for (auto i : u) EXPECT_EQ(r.data.synthetic[i], 0);
}

TEST(Split, UndersampleBalances) {
  const Dataset d = toy(10, 90);
  const auto idx = undersample_balanced(d, 3);
  ASSERT_EQ(idx.size(), 20u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  int ones = 0;
  for (auto i : idx) ones += d.label[i] == 1.0;
  EXPECT_EQ(ones, 10);
}

TEST(Provenance, CountsAndText) {
  Provenance p;
  p.config = {{"elo_lo", "1200"}, {"seed", "42"}};
  p.sources = {"a.pgn"};
  p.set_count("parsed", 49);
  p.set_count("filtered", 35);
  p.set_count("filtered", 34);
  EXPECT_EQ(p.count("filtered"), 34u);
  EXPECT_THROW(p.count("missing"), std::out_of_range);
  const std::string t = p.to_text();
  EXPECT_NE(t.find("elo_lo=1200\n"), std::string::npos);
  EXPECT_NE(t.find("# count.parsed=49"), std::string::npos);
  EXPECT_NE(t.find("a.pgn"), std::string::npos);
}
