#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bpchess/ml/linear.hpp"
#include "bpchess/ml/mlp.hpp"
#include "bpchess/ml/standardize.hpp"
#include "bpchess/ml/types.hpp"

namespace bpchess::ml {

enum class Family { Ridge, Logistic, LinearSvc, LinearRegression, Mlp };
enum class Task { Binary, Regression };

/// "ridge", "logreg", "svc", "linreg", "mlp".
std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
std::string task_name(Task t);
std::optional<Task> parse_task(std::string_view name);
Task task_of(Family f);
const std::vector<Family>& families_for(Task t);

struct TrainConfig {
  Family family = Family::Ridge;
  double ridge_alpha = 1.0;
  LogisticOptions logistic;
  SvcOptions svc;
  MlpOptions mlp;
  std::uint64_t seed = 42;
  int smote_k = 5;
  double test_fraction = 0.2;
  int repeats = 10;

  /// The family's hyperparameters as text pairs, as echoed in artifacts.
  std::vector<std::pair<std::string, std::string>> hyperparameters() const;
};

/// A trained model in double precision, independent of the training scalar.
struct ModelParams {
  Family family = Family::Ridge;
  std::string schema_version;
  std::size_t dims = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> hyper;
  Standardizer standardizer;
  LinearModel<double> linear;
  Mlp<double> mlp;

  Task task() const { return task_of(family); }

  /// Binary families: 0/1 labels. Regression families: predicted probability
  /// (linear regression unclamped; clamp at evaluation).
  template <typename Derived>
  Eigen::VectorXd predict(const Eigen::MatrixBase<Derived>& X) const {
    if (static_cast<std::size_t>(X.cols()) != dims) {
      throw std::invalid_argument("model expects " + std::to_string(dims) + " features, got " +
                                  std::to_string(X.cols()));
    }
    const Matrix<double> Z = standardize<double>(standardizer, X);
    switch (family) {
      case Family::Ridge:
      case Family::Logistic:
      case Family::LinearSvc:
        return linear.classify(Z);
      case Family::LinearRegression:
        return linear.decision(Z);
      case Family::Mlp:
        return mlp.predict(Z);
    }
    return {};
  }
};

/// Training configuration recovered from an artifact's family, seed and
/// hyperparameter echo. Keys the echo does not carry keep their defaults.
TrainConfig train_config_from(const ModelParams& model);

/// Standardises X with its own statistics and fits the configured family in
/// `Scalar` precision. Binary families expect labels in {0, 1}.
template <typename Scalar, typename Derived, typename YDerived>
ModelParams train_model(const Eigen::MatrixBase<Derived>& X, const Eigen::MatrixBase<YDerived>& y,
                        const TrainConfig& config, const std::string& schema_version,
                        std::vector<std::string>* warnings = nullptr) {
  if (X.rows() == 0) throw std::invalid_argument("cannot train on an empty dataset");
  ModelParams p;
  p.family = config.family;
  p.schema_version = schema_version;
  p.dims = static_cast<std::size_t>(X.cols());
  p.seed = config.seed;
  p.hyper = config.hyperparameters();
  p.standardizer = fit_standardizer(X);
  const Matrix<Scalar> Z = standardize<Scalar>(p.standardizer, X);
  const Vector<Scalar> t = y.template cast<Scalar>();

  auto keep = [&](const LinearModel<Scalar>& m) {
    p.linear.w = m.w.template cast<double>();
    p.linear.b = static_cast<double>(m.b);
  };
  FitTrace trace;
  switch (config.family) {
    case Family::Ridge:
      keep(fit_ridge_classifier(Z, t, config.ridge_alpha));
      break;
    case Family::Logistic:
      keep(fit_logistic_regression(Z, t, config.logistic, &trace));
      if (!trace.converged && warnings) {
        warnings->push_back("logistic regression stopped at max_iter with gradient norm " +
                            std::to_string(trace.grad_norm));
      }
      break;
    case Family::LinearSvc:
      keep(fit_linear_svc(Z, t, config.svc, &trace));
      if (!trace.converged && warnings) {
        warnings->push_back("linear SVC stopped at max_iter with gradient norm " + std::to_string(trace.grad_norm));
      }
      break;
    case Family::LinearRegression: {
      std::string warning;
      keep(fit_linear_regression(Z, t, {}, &warning));
      if (!warning.empty() && warnings) warnings->push_back(warning);
      break;
    }
    case Family::Mlp: {
      MlpOptions o = config.mlp;
      o.seed = config.seed;
      const Mlp<Scalar> m = fit_mlp(Z, t, o);
      for (std::size_t l = 0; l < m.layers(); ++l) {
        p.mlp.weights.push_back(m.weights[l].template cast<double>());
        p.mlp.biases.push_back(m.biases[l].template cast<double>());
      }
      break;
    }
  }
  return p;
}

}  // namespace bpchess::ml
