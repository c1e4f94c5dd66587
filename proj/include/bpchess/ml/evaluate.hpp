#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "bpchess/dataset/dataset.hpp"
#include "bpchess/ml/metrics.hpp"
#include "bpchess/ml/model.hpp"

namespace bpchess::ml {

/// Binary labels and raw features of a dataset as Eigen views/copies.
MatrixMap<float> features(const dataset::Dataset& data);
Eigen::VectorXd labels(const dataset::Dataset& data);

/// Training data for one fit: SMOTE-balanced rows for binary families,
/// aggregated probability rows for regression families.
dataset::Dataset prepare_training(const dataset::Dataset& rows, const TrainConfig& config,
                                  std::vector<std::string>* warnings = nullptr);
/// Test data: undersampled balanced rows (binary) or aggregated rows
/// (regression). Throws std::logic_error if a synthetic row is present.
dataset::Dataset prepare_test(const dataset::Dataset& rows, Task task, std::uint64_t seed);

/// Accuracy in percent (binary) or mean error in points (regression).
double score(const ModelParams& model, const dataset::Dataset& prepared_test);

struct EvalResult {
  Family family = Family::Ridge;
  std::vector<double> metrics;  // one per repeat
  MeanStd summary;
};

/// `config.repeats` random splits by game, fresh fit on each train part.
/// Repeat r uses the seed derived from (config.seed, r).
EvalResult evaluate_protocol(const dataset::Dataset& data, const TrainConfig& config,
                             std::vector<std::string>* warnings = nullptr);

/// One line of an eval CSV.
struct EvalRow {
  int bucket = 0;
  std::string strategy_set;  // "basic" or "advanced"
  std::string family;
  double metric_mean = 0.0;
  double metric_std = 0.0;
  int repeats = 0;
};

std::string eval_csv(const std::vector<EvalRow>& rows);
std::vector<EvalRow> read_eval_csv(std::istream& in);

struct ReportTables {
  std::string markdown;
  std::string csv;
};

/// Rows = strategy set x family, columns = buckets; binary and regression
/// families form separate tables. The best value per column (max accuracy,
/// min mean error) is marked; absent cells show an em dash (U+2014).
ReportTables make_report(const std::vector<EvalRow>& rows);

}  // namespace bpchess::ml
