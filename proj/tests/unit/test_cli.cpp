// Runs the bpchess binary end to end on the fixture corpus.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kFixture = std::string(BPCHESS_FIXTURE_DIR) + "/fixture50.pgn";

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bpchess_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args, const std::string& env = "") const {
    const fs::path o = dir_ / "stdout.txt", e = dir_ / "stderr.txt";
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + std::string(BPCHESS_CLI) + "\" " + args + " >\"" +
                            o.string() + "\" 2>\"" + e.string() + "\"";
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string build_fixture(const std::string& name, const std::string& extra = "") const {
    const Outcome r = run("build --pgn \"" + kFixture + "\" --out \"" + path(name) + "\" " + extra);
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  fs::path dir_;
};

std::string count_line(const std::string& provenance, const std::string& key) {
  const std::regex re("# count\\." + key + "=(\\d+)");
  std::smatch m;
  return std::regex_search(provenance, m, re) ? m[1].str() : "";
}

TEST_F(CliTest, PerftKnownCounts) {
  EXPECT_EQ(run("perft --depth 0").out, "1\n");
  EXPECT_EQ(run("perft --depth 1").out, "20\n");
  EXPECT_EQ(run("perft --depth 3").out, "8902\n");
  EXPECT_EQ(run("perft --depth 2 --fen \"r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1\"").out,
            "2039\n");
}

TEST_F(CliTest, PerftRefusesDeepAndBadInput) {
  const Outcome deep = run("perft --depth 7");
  EXPECT_EQ(deep.code, 1);
  EXPECT_NE(deep.err.find("maximum 6"), std::string::npos);
  EXPECT_EQ(run("perft --depth 1 --fen \"not a fen\"").code, 1);
  EXPECT_EQ(run("perft").code, 1);
}

TEST_F(CliTest, HelpAndUnknownSubcommand) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("bogus").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST_F(CliTest, BuildWritesArtifactsWithCounts) {
  const std::string data = build_fixture("d.csv");
  ASSERT_TRUE(fs::exists(data + ".schema"));
  ASSERT_TRUE(fs::exists(data + ".skipped"));
  const std::string prov = slurp(data + ".provenance");
  EXPECT_EQ(count_line(prov, "games_parsed"), "49");
  EXPECT_EQ(count_line(prov, "games_filter_passed"), "35");
  EXPECT_EQ(count_line(prov, "games_extracted"), "35");
  EXPECT_NE(prov.find("elo_bucket=1200"), std::string::npos);
  EXPECT_NE(slurp(data + ".skipped").find("illegal SAN token 'Qxh8'"), std::string::npos);

  // One played row per opening ply.
  EXPECT_EQ(count_line(prov, "rows_played"), count_line(prov, "opening_plies"));
}

TEST_F(CliTest, BuildSchemaWidthFollowsStrategySet) {
  const std::string basic = build_fixture("b.csv");
  const std::string adv = build_fixture("a.csv", "--advanced");
  auto schema_lines = [](const std::string& p) {
    std::istringstream s(slurp(p + ".schema"));
    int n = 0;
    for (std::string line; std::getline(s, line);) n += line.find(':') != std::string::npos && line[0] != '#';
    return n;
  };
  EXPECT_EQ(schema_lines(basic), 27);
  EXPECT_EQ(schema_lines(adv), 37);
  std::istringstream hb(slurp(basic)), ha(slurp(adv));
  std::string line;
  auto header_cols = [&](std::istringstream& s) {
    while (std::getline(s, line) && line.rfind("#", 0) == 0) {
    }
    return std::count(line.begin(), line.end(), ',') + 1;
  };
  // game, ply, move, label + before ++ after
  EXPECT_EQ(header_cols(hb), 4 + 2 * 27);
  EXPECT_EQ(header_cols(ha), 4 + 2 * 37);
}

TEST_F(CliTest, BuildIsDeterministicAndReplaysFromProvenance) {
  const std::string a = build_fixture("a.csv", "--workers 3");
  const std::string b = build_fixture("b.csv");
  EXPECT_EQ(slurp(a), slurp(b));
  const Outcome again = run("build --config \"" + a + ".provenance\" --out \"" + path("c.csv") + "\"");
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(slurp(a), slurp(path("c.csv")));
}

TEST_F(CliTest, BuildExitCodes) {
  EXPECT_EQ(run("build --pgn /no/such/file.pgn --out \"" + path("x.csv") + "\"").code, 1);
  const Outcome none = run("build --pgn \"" + kFixture + "\" --elo-bucket 2500 --out \"" + path("x.csv") + "\"");
  EXPECT_EQ(none.code, 2);
  EXPECT_NE(none.err.find("no games"), std::string::npos);
  EXPECT_EQ(run("build --pgn \"" + kFixture + "\"").code, 1);
  EXPECT_EQ(run("build --pgn \"" + kFixture + "\" --out \"" + path("x.csv") + "\" --seed banana").code, 1);
}

TEST_F(CliTest, TrainLogregEchoesHyperparameters) {
  const std::string data = build_fixture("d.csv");
  const Outcome r = run("train --data \"" + data + "\" --task binary --model logreg --out \"" + path("m.txt") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string model = slurp(path("m.txt"));
  EXPECT_NE(model.find("hyper C=0.1\n"), std::string::npos);
  EXPECT_NE(model.find("hyper max_iter=4000\n"), std::string::npos);
  EXPECT_NE(r.out.find("held-out accuracy"), std::string::npos);
}

TEST_F(CliTest, TrainMlpRecordsLayers) {
  const std::string data = build_fixture("d.csv");
  const Outcome r = run("train --data \"" + data + "\" --task regression --model mlp --out \"" + path("m.txt") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(path("m.txt")).find("layers=32,16"), std::string::npos);
}

TEST_F(CliTest, TrainRejectsMismatchAndEmptyData) {
  const std::string data = build_fixture("d.csv");
  EXPECT_EQ(run("train --data \"" + data + "\" --task regression --model svc --out \"" + path("m") + "\"").code, 1);
  EXPECT_EQ(run("train --data \"" + data + "\" --task binary --model nope --out \"" + path("m") + "\"").code, 1);

  // Header only: keep the comment lines and the column line.
  std::istringstream in(slurp(data));
  std::ofstream empty(path("empty.csv"));
  for (std::string line; std::getline(in, line);) {
    empty << line << '\n';
    if (line.rfind("#", 0) != 0) break;
  }
  empty.close();
  const Outcome r = run("train --data \"" + path("empty.csv") + "\" --task binary --model ridge --out \"" + path("m") + "\"");
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(CliTest, EvalSingleRepeatHasZeroStd) {
  const std::string data = build_fixture("d.csv");
  ASSERT_EQ(run("train --data \"" + data + "\" --task binary --model ridge --out \"" + path("m.txt") + "\"").code, 0);
  const Outcome r = run("eval --data \"" + data + "\" --model \"" + path("m.txt") + "\" --repeats 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("+/- 0.00 over 1 repeat"), std::string::npos);
  EXPECT_NE(r.out.find("bucket,strategy_set,family,metric_mean,metric_std,repeats\n"), std::string::npos);
  EXPECT_TRUE(std::regex_search(r.out, std::regex("\n1200,basic,ridge,[0-9.]+,0\\.0000,1\n")));
}

TEST_F(CliTest, EvalRejectsSchemaMismatch) {
  const std::string basic = build_fixture("b.csv");
  const std::string adv = build_fixture("a.csv", "--advanced");
  ASSERT_EQ(run("train --data \"" + basic + "\" --task binary --model ridge --out \"" + path("m.txt") + "\"").code, 0);
  const Outcome r = run("eval --data \"" + adv + "\" --model \"" + path("m.txt") + "\" --repeats 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("schema mismatch"), std::string::npos);
}

TEST_F(CliTest, ReportMarksBestAndMissingCells) {
  fs::create_directories(path("runs"));
  std::ofstream(path("runs/a.csv")) << "bucket,strategy_set,family,metric_mean,metric_std,repeats\n"
                                       "1200,basic,ridge,70.0,1.0,10\n"
                                       "1200,basic,logreg,72.5,0.5,10\n"
                                       "1300,basic,ridge,71.0,2.0,10\n";
  std::ofstream(path("runs/b.csv")) << "bucket,strategy_set,family,metric_mean,metric_std,repeats\n"
                                       "1200,basic,linreg,10.5,0.1,10\n";
  const Outcome r = run("report --runs \"" + path("runs") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("**72.50**"), std::string::npos);
  EXPECT_NE(r.out.find("**71.00**"), std::string::npos);
  EXPECT_NE(r.out.find("\xE2\x80\x94"), std::string::npos);
  const std::string csv = slurp(path("runs/report.csv"));
  EXPECT_NE(csv.find("binary,basic,logreg,72.50*,\xE2\x80\x94\n"), std::string::npos);

  // report.csv in the directory is not read back as input.
  const Outcome again = run("report --runs \"" + path("runs") + "\"");
  EXPECT_EQ(again.out, r.out);
}

TEST_F(CliTest, ReportEmptyDirectoryIsDataError) {
  fs::create_directories(path("runs"));
  EXPECT_EQ(run("report --runs \"" + path("runs") + "\"").code, 2);
  EXPECT_EQ(run("report --runs \"" + path("missing") + "\"").code, 1);
}

TEST_F(CliTest, ExplainFirstPly) {
  const Outcome r = run("explain --pgn \"" + kFixture + "\" --game 2 --ply 0");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream s(r.out);
  int moves = 0, marked = 0;
  std::string e4;
  for (std::string line; std::getline(s, line);) {
    if (line.rfind("move ", 0) != 0) continue;
    ++moves;
    marked += line.find(" * ") != std::string::npos || line.ends_with(" *");
    if (line.rfind("move e4 ", 0) == 0 || line == "move e4") e4 = line;
  }
  EXPECT_EQ(moves, 20);
  EXPECT_EQ(marked, 1);
  EXPECT_NE(e4.find("own_center_control 0->4"), std::string::npos) << e4;
  EXPECT_NE(e4.find("own_pawn_moves 0->1"), std::string::npos) << e4;
}

TEST_F(CliTest, ExplainRefusesPlyBeyondOpening) {
  const Outcome r = run("explain --pgn \"" + kFixture + "\" --game 1 --ply 300");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("castle"), std::string::npos);
  EXPECT_EQ(run("explain --pgn \"" + kFixture + "\" --game 0 --ply 0").code, 1);
}

TEST_F(CliTest, ConfigPrecedence) {
  EXPECT_NE(run("config --dump").out.find("seed=42\n"), std::string::npos);
  EXPECT_NE(run("config --dump", "BPCHESS_SEED=9").out.find("seed=9\n"), std::string::npos);
  std::ofstream(path("c.cfg")) << "# comment\nseed=11\nrepeats=3\n";
  const std::string cfg = "--config \"" + path("c.cfg") + "\"";
  const Outcome file = run("config --dump " + cfg, "BPCHESS_SEED=9");
  EXPECT_NE(file.out.find("seed=11\n"), std::string::npos);
  EXPECT_NE(file.out.find("repeats=3\n"), std::string::npos);
  EXPECT_NE(run("config --dump --seed 5 " + cfg).out.find("seed=5\n"), std::string::npos);
  std::ofstream(path("bad.cfg")) << "colour=blue\n";
  EXPECT_EQ(run("config --dump --config \"" + path("bad.cfg") + "\"").code, 1);
}

TEST_F(CliTest, GridSmallRunIsDeterministic) {
  const std::string args = "grid --pgn \"" + kFixture +
                           "\" --buckets 1200,1900 --families ridge,linreg --repeats 2 --out ";
  const Outcome a = run(args + "\"" + path("g1") + "\"");
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(run(args + "\"" + path("g2") + "\"").code, 0);
  EXPECT_EQ(slurp(path("g1/report.csv")), slurp(path("g2/report.csv")));
  EXPECT_TRUE(fs::exists(path("g1/eval_1200_basic.csv")));
  EXPECT_TRUE(fs::exists(path("g1/eval_1200_advanced.csv")));
  // 1900 has no games in the fixture and is skipped, not fatal.
  EXPECT_FALSE(fs::exists(path("g1/eval_1900_basic.csv")));
}

}  // namespace
