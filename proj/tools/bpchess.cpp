// bpchess: build datasets from PGN, train and evaluate move-choice models,
// report tables, explain features, count perft nodes.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bpchess/chess/movegen.hpp"
#include "bpchess/chess/pgn.hpp"
#include "bpchess/chess/san.hpp"
#include "bpchess/dataset/csv_io.hpp"
#include "bpchess/dataset/extract.hpp"
#include "bpchess/dataset/filter.hpp"
#include "bpchess/dataset/opening.hpp"
#include "bpchess/dataset/split.hpp"
#include "bpchess/ml/evaluate.hpp"
#include "bpchess/ml/model_io.hpp"
#include "bpchess/strategy/game_kernel.hpp"
#include "bpchess/strategy/schema.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace bpchess;
using cli::DataError;
using cli::RunConfig;
using cli::UsageError;

namespace {

// ------------------------------------------------------------ flag plumbing

// Flags that map onto config keys. Values are applied after the config file,
// so flags win.
struct Flags {
  std::string config_path;
  std::deque<std::pair<CLI::Option*, std::string>> keyed;  // option, key
  std::deque<std::string> storage;
  std::deque<std::pair<CLI::Option*, std::string>> switches;
  std::vector<std::string> pgn;
  CLI::Option* pgn_opt = nullptr;

  void config(CLI::App* app) { app->add_option("--config", config_path, "key=value config file"); }
  void value(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    storage.emplace_back();
    keyed.emplace_back(app->add_option(flag, storage.back(), help), key);
  }
  void toggle(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    switches.emplace_back(app->add_flag(flag, help), key);
  }
  void pgns(CLI::App* app) { pgn_opt = app->add_option("--pgn", pgn, "PGN input file(s)"); }

  RunConfig resolve() const {
    RunConfig c;
    c.load_env();
    if (!config_path.empty()) c.load_file(config_path);
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      if (keyed[i].first->count()) c.set(keyed[i].second, storage[i]);
    }
    for (const auto& [opt, key] : switches) {
      if (opt->count()) c.set(key, "1");
    }
    if (pgn_opt && pgn_opt->count()) {
      c.clear_pgn();
      for (const auto& p : pgn) c.add_pgn(p);
    }
    return c;
  }
};

void common_train_flags(Flags& f, CLI::App* app) {
  f.value(app, "--seed", "seed", "master seed");
  f.value(app, "--smote-k", "smote_k", "SMOTE neighbour count");
  f.value(app, "--test-fraction", "test_fraction", "share of games held out");
}

// ---------------------------------------------------------------- helpers

struct LoadedGames {
  std::vector<chess::GameRecord> games;
  std::vector<chess::Diagnostic> skipped;
  std::size_t seen = 0;
};

LoadedGames load_games(const std::vector<std::string>& paths) {
  if (paths.empty()) throw UsageError("no --pgn input given");
  LoadedGames out;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read PGN file " + path);
    chess::PgnReader reader(in, fs::path(path).filename().string());
    chess::GameRecord g;
    while (reader.next(g)) out.games.push_back(std::move(g));
    out.skipped.insert(out.skipped.end(), reader.skipped().begin(), reader.skipped().end());
    out.seen += reader.games_seen();
  }
  return out;
}

struct BucketData {
  dataset::Dataset data;
  dataset::Provenance provenance;
  std::vector<chess::Diagnostic> skipped;
};

// parse -> filter -> truncate -> extract for one bucket and strategy set.
BucketData build_bucket(const LoadedGames& loaded, const RunConfig& cfg, int bucket) {
  BucketData out;
  auto& prov = out.provenance;
  prov.config = cfg.entries();
  prov.sources = cfg.pgn();
  prov.set_count("games_read", loaded.seen);
  prov.set_count("games_parsed", loaded.games.size());
  out.skipped = loaded.skipped;

  auto filtered = dataset::filter_games(loaded.games, cfg.filter(bucket));
  prov.set_count("games_filter_passed", filtered.passed);
  prov.set_count("games_sampled", filtered.games.size());
  out.skipped.insert(out.skipped.end(), filtered.dropped.begin(), filtered.dropped.end());
  if (filtered.games.empty()) {
    throw DataError("no games left after filtering for bucket [" + std::to_string(bucket) + ", " +
                    std::to_string(bucket + cfg.get_int("elo_width")) + ")");
  }

  std::size_t plies = 0;
  for (auto& g : filtered.games) {
    g = dataset::truncate_opening(std::move(g));
    plies += g.san_moves.size();
  }
  prov.set_count("opening_plies", plies);

  const int workers = std::max(1, cfg.get_int("workers"));
  auto extracted = dataset::extract_all(filtered.games, cfg.strategy(), bucket, static_cast<unsigned>(workers));
  out.skipped.insert(out.skipped.end(), extracted.dropped.begin(), extracted.dropped.end());
  prov.set_count("games_extracted", extracted.games);
  prov.set_count("rows", extracted.data.rows());
  prov.set_count("rows_played", extracted.data.count_label(1.0));
  if (extracted.games == 0) throw DataError("every filtered game failed to replay");
  out.data = std::move(extracted.data);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
  if (!f) throw DataError("write failed: " + path);
}

std::string fmt(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string metric_name(ml::Task t) { return t == ml::Task::Binary ? "accuracy %" : "mean error (points)"; }

ml::Family family_arg(const std::string& name) {
  const auto f = ml::parse_family(name);
  if (!f) throw UsageError("unknown model '" + name + "' (ridge, logreg, svc, linreg, mlp)");
  return *f;
}

ml::EvalRow eval_row(const dataset::Dataset& data, ml::Family family, const ml::EvalResult& r) {
  return {data.bucket, data.advanced ? "advanced" : "basic", ml::family_name(family), r.summary.mean,
          r.summary.std, static_cast<int>(r.metrics.size())};
}

// --------------------------------------------------------------- commands

int cmd_build(const RunConfig& cfg) {
  const std::string out = cfg.get("out");
  if (out.empty()) throw UsageError("build needs --out");
  const int bucket = cfg.get_int("elo_bucket");
  const LoadedGames loaded = load_games(cfg.pgn());
  BucketData b = build_bucket(loaded, cfg, bucket);

  const auto schema = strategy::make_schema(cfg.strategy());
  dataset::write_dataset(out, b.data);
  write_text(out + ".schema", strategy::schema_text(schema));
  write_text(out + ".provenance", b.provenance.to_text());
  write_text(out + ".skipped", chess::format_skip_report(b.skipped));
  std::cout << "wrote " << b.data.rows() << " rows from " << b.provenance.count("games_extracted") << " games to "
            << out << " (schema " << schema.version << ", " << schema.size() << " registers per snapshot)\n";
  return 0;
}

int cmd_train(const RunConfig& cfg, const std::string& data_path) {
  const std::string out = cfg.get("out");
  if (out.empty()) throw UsageError("train needs --out");
  if (data_path.empty()) throw UsageError("train needs --data");
  const ml::Family family = family_arg(cfg.get("model"));
  const auto task = ml::parse_task(cfg.get("task"));
  if (!task) throw UsageError("unknown task '" + cfg.get("task") + "' (binary, regression)");
  if (ml::task_of(family) != *task) {
    throw UsageError("model " + ml::family_name(family) + " does not fit the " + ml::task_name(*task) + " task");
  }
  const dataset::Dataset data = dataset::read_dataset(data_path);
  if (data.empty()) throw DataError("cannot train on an empty dataset: " + data_path);

  const ml::TrainConfig tc = cfg.train(family);
  const auto split = dataset::split_by_game(data, tc.test_fraction, tc.seed);
  if (split.train.empty()) throw DataError("no training games after the split");
  std::vector<std::string> warnings;
  const auto train = ml::prepare_training(data.subset(split.train), tc, &warnings);
  const auto model =
      ml::train_model<float>(ml::features(train), ml::labels(train), tc, data.schema_version, &warnings);
  ml::write_model(out, model);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "trained " << ml::family_name(family) << " on " << train.rows() << " rows";
  if (!split.test.empty()) {
    const auto test = ml::prepare_test(data.subset(split.test), *task, tc.seed);
    if (!test.empty()) std::cout << "; held-out " << metric_name(*task) << " " << fmt(ml::score(model, test), 2);
  }
  std::cout << "\n";
  return 0;
}

int cmd_eval(RunConfig cfg, const std::string& data_path, const std::string& model_path, bool fixed) {
  if (data_path.empty() || model_path.empty()) throw UsageError("eval needs --data and --model");
  const dataset::Dataset data = dataset::read_dataset(data_path);
  const ml::ModelParams model = ml::read_model(model_path);
  if (model.schema_version != data.schema_version) {
    throw DataError("schema mismatch: model trained on " + model.schema_version + ", data is " +
                    data.schema_version);
  }
  if (model.dims != data.width()) throw DataError("model expects " + std::to_string(model.dims) + " features");

  ml::TrainConfig tc = ml::train_config_from(model);
  const ml::TrainConfig from_flags = cfg.train(model.family);
  tc.repeats = from_flags.repeats;
  tc.smote_k = from_flags.smote_k;
  tc.test_fraction = from_flags.test_fraction;

  ml::EvalResult r;
  r.family = model.family;
  std::vector<std::string> warnings;
  if (fixed) {
    // Score the stored weights as they are, on the whole file.
    const auto test = ml::prepare_test(data, model.task(), tc.seed);
    r.metrics.push_back(ml::score(model, test));
    r.summary = ml::mean_std(r.metrics);
  } else {
    r = ml::evaluate_protocol(data, tc, &warnings);
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  std::cout << ml::family_name(model.family) << " " << metric_name(model.task()) << ": " << fmt(r.summary.mean, 2)
            << " +/- " << fmt(r.summary.std, 2) << " over " << r.metrics.size() << " repeat(s)\n";
  const std::string csv = ml::eval_csv({eval_row(data, model.family, r)});
  const std::string out = cfg.get("out");
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_text(out, csv);
  }
  return 0;
}

int cmd_report(const std::string& runs, const std::string& out_dir) {
  if (runs.empty()) throw UsageError("report needs --runs");
  if (!fs::is_directory(runs)) throw UsageError("not a directory: " + runs);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(runs)) {
    if (e.is_regular_file() && e.path().extension() == ".csv" && e.path().filename() != "report.csv") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ml::EvalRow> rows;
  for (const auto& p : files) {
    std::ifstream in(p);
    try {
      const auto part = ml::read_eval_csv(in);
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const std::exception& e) {
      throw DataError(p.string() + ": " + e.what());
    }
  }
  if (rows.empty()) throw DataError("no eval CSV rows found in " + runs);
  const auto tables = ml::make_report(rows);
  const fs::path dir = out_dir.empty() ? fs::path(runs) : fs::path(out_dir);
  fs::create_directories(dir);
  write_text((dir / "report.md").string(), tables.markdown);
  write_text((dir / "report.csv").string(), tables.csv);
  std::cout << tables.markdown;
  return 0;
}

int cmd_explain(const RunConfig& cfg, int game_no, int ply) {
  const LoadedGames loaded = load_games(cfg.pgn());
  if (game_no < 1 || static_cast<std::size_t>(game_no) > loaded.games.size()) {
    throw UsageError("--game must be in 1.." + std::to_string(loaded.games.size()));
  }
  const chess::GameRecord& game = loaded.games[game_no - 1];
  const std::size_t limit = dataset::opening_length(game);
  if (ply < 0 || static_cast<std::size_t>(ply) >= limit) {
    throw UsageError("ply " + std::to_string(ply) + " is outside the opening of this game (plies 0.." +
                     std::to_string(static_cast<long>(limit) - 1) +
                     "); openings end after both sides castle, else after 10 moves each");
  }

  const auto sc = cfg.strategy();
  const auto schema = strategy::make_schema(sc);
  strategy::GameKernel k(sc);
  for (int p = 0; p < ply; ++p) k.play_san(game.san_moves[p]);
  const chess::Board board = k.board();
  const int own = chess::index(board.side_to_move());
  const chess::Move played = chess::parse_san(board, game.san_moves[ply]);

  std::vector<float> before(schema.size()), after(schema.size());
  strategy::encode_as(k.snapshot(), schema, own, before);
  std::cout << "game " << game_no << " (" << game.source_id << ") ply " << ply << ", "
            << (own == 0 ? "White" : "Black") << " to move, fen " << board.fen() << "\n";
  std::cout << "before";
  for (std::size_t i = 0; i < schema.size(); ++i) std::cout << ' ' << schema.names[i] << '=' << before[i];
  std::cout << "\n";

  const auto successors = chess::legal_successors(board);
  for (const auto& s : successors) {
    strategy::GameKernel branch = k.fork();
    const std::string san = chess::to_san(board, s.move, successors);
    branch.play(s, san);
    strategy::encode_as(branch.snapshot(), schema, own, after);
    std::cout << "move " << san << (s.move == played ? " *" : "");
    for (std::size_t i = 0; i < schema.size(); ++i) {
      if (after[i] != before[i]) std::cout << ' ' << schema.names[i] << ' ' << before[i] << "->" << after[i];
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_perft(int depth, const std::string& fen) {
  if (depth < 0) throw UsageError("depth must be >= 0");
  if (depth > 6) throw UsageError("depth " + std::to_string(depth) + " is too large (maximum 6)");
  chess::Board b;
  try {
    b = fen.empty() ? chess::Board::initial() : chess::Board::from_fen(fen);
  } catch (const chess::ChessError& e) {
    throw UsageError(std::string("bad --fen: ") + e.what());
  }
  std::cout << chess::perft(b, depth) << "\n";
  return 0;
}

int cmd_grid(RunConfig cfg) {
  const std::string out = cfg.get("out");
  if (out.empty()) throw UsageError("grid needs --out");
  std::vector<ml::Family> families;
  for (const auto& f : cfg.get_list("families")) families.push_back(family_arg(f));
  std::vector<int> buckets;
  for (const auto& b : cfg.get_list("buckets")) {
    try {
      buckets.push_back(std::stoi(b));
    } catch (const std::exception&) {
      throw UsageError("bad bucket '" + b + "'");
    }
  }
  if (families.empty() || buckets.empty()) throw UsageError("grid needs at least one bucket and one family");
  fs::create_directories(out);
  const LoadedGames loaded = load_games(cfg.pgn());

  std::vector<ml::EvalRow> all;
  for (int bucket : buckets) {
    for (const char* set : {"basic", "advanced"}) {
      cfg.set("advanced", std::string(set) == "advanced" ? "1" : "0");
      BucketData b;
      try {
        b = build_bucket(loaded, cfg, bucket);
      } catch (const DataError& e) {
        std::cerr << "skipping bucket " << bucket << " (" << set << "): " << e.what() << '\n';
        continue;
      }
      std::vector<ml::EvalRow> rows;
      for (ml::Family f : families) {
        std::vector<std::string> warnings;
        const auto r = ml::evaluate_protocol(b.data, cfg.train(f), &warnings);
        rows.push_back(eval_row(b.data, f, r));
        std::cerr << bucket << ' ' << set << ' ' << ml::family_name(f) << ": " << fmt(r.summary.mean, 2) << " +/- "
                  << fmt(r.summary.std, 2) << '\n';
      }
      const std::string stem = "eval_" + std::to_string(bucket) + "_" + set;
      write_text((fs::path(out) / (stem + ".csv")).string(), ml::eval_csv(rows));
      write_text((fs::path(out) / (stem + ".provenance")).string(), b.provenance.to_text());
      all.insert(all.end(), rows.begin(), rows.end());
    }
  }
  if (all.empty()) throw DataError("no bucket had any games");
  const auto tables = ml::make_report(all);
  write_text((fs::path(out) / "report.md").string(), tables.markdown);
  write_text((fs::path(out) / "report.csv").string(), tables.csv);
  std::cout << tables.markdown;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioural-programming features for chess move prediction"};
  app.require_subcommand(1);

  Flags build_f;
  auto* build = app.add_subcommand("build", "PGN -> filtered opening dataset (CSV, schema, provenance)");
  build_f.config(build);
  build_f.pgns(build);
  build_f.value(build, "--out", "out", "dataset CSV path");
  build_f.value(build, "--elo-bucket", "elo_bucket", "lower Elo bound of the bucket");
  build_f.value(build, "--max-games", "max_games", "games sampled per bucket");
  build_f.value(build, "--seed", "seed", "master seed");
  build_f.value(build, "--workers", "workers", "extraction threads");
  build_f.toggle(build, "--advanced", "advanced", "add the advanced strategies");

  Flags train_f;
  std::string train_data;
  auto* train = app.add_subcommand("train", "fit one model on a dataset");
  train_f.config(train);
  train->add_option("--data", train_data, "dataset CSV")->required();
  train_f.value(train, "--task", "task", "binary or regression");
  train_f.value(train, "--model", "model", "ridge, logreg, svc, linreg or mlp");
  train_f.value(train, "--out", "out", "model artifact path");
  common_train_flags(train_f, train);

  Flags eval_f;
  std::string eval_data, eval_model;
  bool eval_fixed = false;
  auto* eval = app.add_subcommand("eval", "repeated split evaluation of a model configuration");
  eval_f.config(eval);
  eval->add_option("--data", eval_data, "dataset CSV")->required();
  eval->add_option("--model", eval_model, "model artifact")->required();
  eval_f.value(eval, "--repeats", "repeats", "random splits by game");
  eval_f.value(eval, "--out", "out", "eval CSV path (default: stdout)");
  eval->add_flag("--fixed", eval_fixed, "score the stored weights on the whole file instead of refitting");
  common_train_flags(eval_f, eval);

  std::string runs, report_out;
  auto* report = app.add_subcommand("report", "tables from a directory of eval CSVs");
  report->add_option("--runs", runs, "directory of eval CSVs")->required();
  report->add_option("--out", report_out, "output directory (default: --runs)");

  Flags explain_f;
  int explain_game = 1, explain_ply = 0;
  auto* explain = app.add_subcommand("explain", "per-candidate feature deltas at one ply");
  explain_f.config(explain);
  explain_f.pgns(explain);
  explain->add_option("--game", explain_game, "game number, from 1")->required();
  explain->add_option("--ply", explain_ply, "ply index, from 0")->required();
  explain_f.toggle(explain, "--advanced", "advanced", "add the advanced strategies");

  int perft_depth = 0;
  std::string perft_fen;
  auto* perft = app.add_subcommand("perft", "count leaf nodes of the legal move tree");
  perft->add_option("--depth", perft_depth, "depth, at most 6")->required();
  perft->add_option("--fen", perft_fen, "start position (default: initial)");

  Flags grid_f;
  auto* grid = app.add_subcommand("grid", "buckets x strategy sets x families in one run");
  grid_f.config(grid);
  grid_f.pgns(grid);
  grid_f.value(grid, "--out", "out", "output directory");
  grid_f.value(grid, "--buckets", "buckets", "comma-separated Elo buckets");
  grid_f.value(grid, "--families", "families", "comma-separated model families");
  grid_f.value(grid, "--repeats", "repeats", "random splits per cell");
  grid_f.value(grid, "--max-games", "max_games", "games sampled per bucket");
  grid_f.value(grid, "--seed", "seed", "master seed");
  grid_f.value(grid, "--workers", "workers", "extraction threads");

  Flags config_f;
  bool dump = false;
  auto* config = app.add_subcommand("config", "show resolved settings");
  config_f.config(config);
  config->add_flag("--dump", dump, "print every key=value");
  config_f.value(config, "--seed", "seed", "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) return cmd_build(build_f.resolve());
    if (*train) return cmd_train(train_f.resolve(), train_data);
    if (*eval) return cmd_eval(eval_f.resolve(), eval_data, eval_model, eval_fixed);
    if (*report) return cmd_report(runs, report_out);
    if (*explain) return cmd_explain(explain_f.resolve(), explain_game, explain_ply);
    if (*perft) return cmd_perft(perft_depth, perft_fen);
    if (*grid) return cmd_grid(grid_f.resolve());
    if (*config) {
      const RunConfig c = config_f.resolve();
      if (!dump) throw UsageError("config: nothing to do (use --dump)");
      std::cout << c.dump();
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const dataset::DatasetFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ml::ModelFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const chess::ChessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
