#include "bpchess/ml/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bpchess/dataset/aggregate.hpp"
#include "bpchess/dataset/smote.hpp"
#include "bpchess/dataset/split.hpp"
#include "bpchess/util/random.hpp"

namespace bpchess::ml {

MatrixMap<float> features(const dataset::Dataset& data) {
  return as_matrix<float>(data.x, static_cast<Eigen::Index>(data.width()));
}

Eigen::VectorXd labels(const dataset::Dataset& data) {
  return Eigen::Map<const Eigen::VectorXd>(data.label.data(), static_cast<Eigen::Index>(data.label.size()));
}

dataset::Dataset prepare_training(const dataset::Dataset& rows, const TrainConfig& config,
                                  std::vector<std::string>* warnings) {
  if (rows.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  if (task_of(config.family) == Task::Regression) return dataset::aggregate_probabilities(rows);
  auto balanced = dataset::smote_balance(rows, {config.smote_k, config.seed});
  if (warnings) warnings->insert(warnings->end(), balanced.warnings.begin(), balanced.warnings.end());
  return std::move(balanced.data);
}

dataset::Dataset prepare_test(const dataset::Dataset& rows, Task task, std::uint64_t seed) {
  for (auto s : rows.synthetic) {
    if (s) throw std::logic_error("synthetic row found in an evaluation split");
  }
  if (task == Task::Regression) return dataset::aggregate_probabilities(rows);
  const auto keep = dataset::undersample_balanced(rows, seed);
  return rows.subset(keep);
}

double score(const ModelParams& model, const dataset::Dataset& test) {
  if (test.width() != model.dims) throw std::invalid_argument("test data width does not match the model");
  const Eigen::VectorXd pred = model.predict(features(test));
  const Eigen::VectorXd y = labels(test);
  return model.task() == Task::Binary ? accuracy_percent(pred, y) : mean_error_points(pred, y);
}

EvalResult evaluate_protocol(const dataset::Dataset& data, const TrainConfig& config,
                             std::vector<std::string>* warnings) {
  if (config.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  EvalResult result;
  result.family = config.family;
  for (int r = 0; r < config.repeats; ++r) {
    TrainConfig c = config;
    c.seed = util::derive_seed(config.seed, "repeat/" + std::to_string(r));
    const auto split = dataset::split_by_game(data, config.test_fraction, c.seed);
    if (split.train.empty() || split.test.empty()) throw std::invalid_argument("split left an empty train or test part");
    const dataset::Dataset train = prepare_training(data.subset(split.train), c, warnings);
    const dataset::Dataset test = prepare_test(data.subset(split.test), task_of(c.family), c.seed);
    const ModelParams model = train_model<float>(features(train), labels(train), c, data.schema_version, warnings);
    result.metrics.push_back(score(model, test));
  }
  result.summary = mean_std(result.metrics);
  return result;
}

namespace {

// U+2014, spelled as bytes.
constexpr const char* kMissing = "\xE2\x80\x94";

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string eval_csv(const std::vector<EvalRow>& rows) {
  std::string out = "bucket,strategy_set,family,metric_mean,metric_std,repeats\n";
  for (const auto& r : rows) {
    out += std::to_string(r.bucket) + ',' + r.strategy_set + ',' + r.family + ',' + fixed(r.metric_mean, 4) + ',' +
           fixed(r.metric_std, 4) + ',' + std::to_string(r.repeats) + '\n';
  }
  return out;
}

std::vector<EvalRow> read_eval_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "bucket,strategy_set,family,metric_mean,metric_std,repeats") {
    throw std::runtime_error("not an eval CSV (bad header)");
  }
  std::vector<EvalRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw std::runtime_error("eval CSV row needs 6 fields: " + line);
    EvalRow r;
    r.bucket = std::stoi(cells[0]);
    r.strategy_set = cells[1];
    r.family = cells[2];
    r.metric_mean = std::stod(cells[3]);
    r.metric_std = std::stod(cells[4]);
    r.repeats = std::stoi(cells[5]);
    rows.push_back(r);
  }
  return rows;
}

ReportTables make_report(const std::vector<EvalRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("no evaluation rows to report");
  std::set<int> bucket_set;
  for (const auto& r : rows) bucket_set.insert(r.bucket);
  const std::vector<int> buckets(bucket_set.begin(), bucket_set.end());

  auto set_rank = [](const std::string& s) { return s == "basic" ? 0 : s == "advanced" ? 1 : 2; };
  auto family_rank = [](const std::string& f) {
    const auto fam = parse_family(f);
    return fam ? static_cast<int>(*fam) : 99;
  };

  ReportTables out;
  out.csv = "task,strategy_set,family";
  for (int b : buckets) out.csv += ',' + std::to_string(b);
  out.csv += '\n';

  for (Task task : {Task::Binary, Task::Regression}) {
    using Key = std::pair<std::string, std::string>;
    std::map<Key, std::map<int, EvalRow>> cells;
    for (const auto& r : rows) {
      const auto fam = parse_family(r.family);
      if (!fam || task_of(*fam) != task) continue;
      cells[{r.strategy_set, r.family}][r.bucket] = r;
    }
    if (cells.empty()) continue;
    std::vector<Key> keys;
    for (const auto& [k, v] : cells) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [&](const Key& a, const Key& b) {
      return std::tuple(set_rank(a.first), a.first, family_rank(a.second), a.second) <
             std::tuple(set_rank(b.first), b.first, family_rank(b.second), b.second);
    });
    std::map<int, double> best;
    for (int b : buckets) {
      for (const auto& k : keys) {
        const auto it = cells[k].find(b);
        if (it == cells[k].end()) continue;
        const double v = it->second.metric_mean;
        const auto cur = best.find(b);
        if (cur == best.end() || (task == Task::Binary ? v > cur->second : v < cur->second)) best[b] = v;
      }
    }

    const bool binary = task == Task::Binary;
    out.markdown += binary ? "## Binary classification (accuracy %, mean ± std)\n\n"
                           : "## Regression (mean error, points, mean ± std)\n\n";
    out.markdown += "| Strategy set | Model |";
    for (int b : buckets) out.markdown += " " + std::to_string(b) + " |";
    out.markdown += "\n|---|---|";
    for (std::size_t i = 0; i < buckets.size(); ++i) out.markdown += "---|";
    out.markdown += '\n';
    for (const auto& k : keys) {
      out.markdown += "| " + k.first + " | " + k.second + " |";
      out.csv += task_name(task) + ',' + k.first + ',' + k.second;
      for (int b : buckets) {
        const auto it = cells[k].find(b);
        if (it == cells[k].end()) {
          out.markdown += std::string(" ") + kMissing + " |";
          out.csv += std::string(",") + kMissing;
          continue;
        }
        const bool is_best = fixed(it->second.metric_mean, 2) == fixed(best[b], 2);
        const std::string v = fixed(it->second.metric_mean, 2);
        out.markdown += " " + (is_best ? "**" + v + "**" : v) + " ± " + fixed(it->second.metric_std, 2) + " |";
        out.csv += ',' + v + (is_best ? "*" : "");
      }
      out.markdown += '\n';
      out.csv += '\n';
    }
    out.markdown += "\nBest value per column in bold.\n\n";
  }
  return out;
}

}  // namespace bpchess::ml
