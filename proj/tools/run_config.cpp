#include "run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bpchess::cli {
namespace {

const std::vector<std::pair<std::string, std::string>>& defaults() {
  static const std::vector<std::pair<std::string, std::string>> d = {
      {"seed", "42"},
      {"elo_bucket", "1200"},
      {"elo_width", "100"},
      {"time_base_min", "600"},
      {"time_base_max", "1200"},
      {"require_complete", "1"},
      {"max_games", "5000"},
      {"advanced", "0"},
      {"early_queen_moves", "6"},
      {"workers", "1"},
      {"task", "binary"},
      {"model", "ridge"},
      {"smote_k", "5"},
      {"test_fraction", "0.2"},
      {"repeats", "10"},
      {"ridge_alpha", "1"},
      {"logreg_c", "0.1"},
      {"logreg_max_iter", "4000"},
      {"logreg_tol", "0.0001"},
      {"svc_c", "1"},
      {"svc_max_iter", "1000"},
      {"mlp_layers", "32,16"},
      {"mlp_lr", "0.001"},
      {"mlp_batch", "128"},
      {"mlp_epochs", "200"},
      {"mlp_loss", "mse"},
      {"buckets", "1200,1300,1400,1500"},
      {"families", "ridge,logreg,svc,linreg,mlp"},
      {"out", ""},
  };
  return d;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc{} || r.ptr != v.data() + v.size()) {
    throw UsageError("config key '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& [k, v] : defaults()) {
    order_.push_back(k);
    values_[k] = v;
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "pgn") {
    add_pgn(value);
    return;
  }
  if (!values_.count(key)) throw UsageError("unknown config key '" + key + "'");
  values_[key] = value;
}

void RunConfig::load_env() {
  if (const char* s = std::getenv("BPCHESS_SEED"); s && *s) {
    parse_number<std::uint64_t>("BPCHESS_SEED", s);
    values_["seed"] = s;
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  bool file_pgn = false;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key == "pgn" && !file_pgn) {
      pgn_.clear();
      file_pgn = true;
    }
    set(key, trim(line.substr(eq + 1)));
  }
}

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::logic_error("no config key " + key);
  return it->second;
}

int RunConfig::get_int(const std::string& key) const { return parse_number<int>(key, get(key)); }
std::uint64_t RunConfig::get_u64(const std::string& key) const { return parse_number<std::uint64_t>(key, get(key)); }

double RunConfig::get_double(const std::string& key) const {
  const std::string& v = get(key);
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw UsageError("config key '" + key + "' expects a number, got '" + v + "'");
  return out;
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw UsageError("config key '" + key + "' expects 0 or 1, got '" + v + "'");
}

std::vector<std::string> RunConfig::get_list(const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream ss(get(key));
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : order_) out.emplace_back(k, values_.at(k));
  for (const auto& p : pgn_) out.emplace_back("pgn", p);
  return out;
}

std::string RunConfig::dump() const {
  std::string s;
  for (const auto& [k, v] : entries()) s += k + "=" + v + "\n";
  return s;
}

dataset::FilterConfig RunConfig::filter(int bucket) const {
  dataset::FilterConfig f;
  f.elo_lo = bucket;
  f.elo_hi = bucket + get_int("elo_width");
  f.time_base_min = get_int("time_base_min");
  f.time_base_max = get_int("time_base_max");
  f.require_complete = get_bool("require_complete");
  f.max_games = get_u64("max_games");
  f.seed = get_u64("seed");
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return f;
}

strategy::StrategyConfig RunConfig::strategy() const {
  strategy::StrategyConfig s;
  s.advanced = get_bool("advanced");
  s.early_queen_moves = get_int("early_queen_moves");
  if (s.early_queen_moves < 0) throw UsageError("early_queen_moves must be >= 0");
  return s;
}

ml::TrainConfig RunConfig::train(ml::Family family) const {
  ml::TrainConfig t;
  t.family = family;
  t.seed = get_u64("seed");
  t.ridge_alpha = get_double("ridge_alpha");
  t.logistic.C = get_double("logreg_c");
  t.logistic.max_iter = get_int("logreg_max_iter");
  t.logistic.tol = get_double("logreg_tol");
  t.svc.C = get_double("svc_c");
  t.svc.max_iter = get_int("svc_max_iter");
  t.mlp.hidden.clear();
  for (const auto& s : get_list("mlp_layers")) t.mlp.hidden.push_back(parse_number<int>("mlp_layers", s));
  t.mlp.learning_rate = get_double("mlp_lr");
  t.mlp.batch_size = get_int("mlp_batch");
  t.mlp.epochs = get_int("mlp_epochs");
  const std::string& loss = get("mlp_loss");
  if (loss != "mse" && loss != "cross_entropy") throw UsageError("mlp_loss must be mse or cross_entropy");
  t.mlp.loss = loss == "mse" ? ml::MlpLoss::SquaredError : ml::MlpLoss::CrossEntropy;
  t.mlp.seed = t.seed;
  t.smote_k = get_int("smote_k");
  t.test_fraction = get_double("test_fraction");
  t.repeats = get_int("repeats");
  if (t.repeats < 1) throw UsageError("repeats must be >= 1");
  if (!(t.test_fraction > 0.0 && t.test_fraction < 1.0)) throw UsageError("test_fraction must be in (0, 1)");
  if (t.smote_k < 1) throw UsageError("smote_k must be >= 1");
  return t;
}

}  // namespace bpchess::cli
