#include "bpchess/ml/model.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace bpchess::ml {
namespace {

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Ridge: return "ridge";
    case Family::Logistic: return "logreg";
    case Family::LinearSvc: return "svc";
    case Family::LinearRegression: return "linreg";
    case Family::Mlp: return "mlp";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Ridge, Family::Logistic, Family::LinearSvc, Family::LinearRegression, Family::Mlp}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string task_name(Task t) { return t == Task::Binary ? "binary" : "regression"; }

std::optional<Task> parse_task(std::string_view name) {
  if (name == "binary") return Task::Binary;
  if (name == "regression") return Task::Regression;
  return std::nullopt;
}

Task task_of(Family f) {
  return f == Family::LinearRegression || f == Family::Mlp ? Task::Regression : Task::Binary;
}

const std::vector<Family>& families_for(Task t) {
  static const std::vector<Family> binary{Family::Ridge, Family::Logistic, Family::LinearSvc};
  static const std::vector<Family> regression{Family::LinearRegression, Family::Mlp};
  return t == Task::Binary ? binary : regression;
}

std::vector<std::pair<std::string, std::string>> TrainConfig::hyperparameters() const {
  switch (family) {
    case Family::Ridge:
      return {{"alpha", num(ridge_alpha)}};
    case Family::Logistic:
      return {{"C", num(logistic.C)}, {"max_iter", std::to_string(logistic.max_iter)}, {"tol", num(logistic.tol)},
              {"penalty", "l2"}, {"solver", "lbfgs"}};
    case Family::LinearSvc:
      return {{"C", num(svc.C)}, {"max_iter", std::to_string(svc.max_iter)}, {"tol", num(svc.tol)},
              {"loss", "squared_hinge"}};
    case Family::LinearRegression:
      return {{"fallback_alpha", "1e-08"}};
    case Family::Mlp: {
      std::string layers;
      for (std::size_t i = 0; i < mlp.hidden.size(); ++i) layers += (i ? "," : "") + std::to_string(mlp.hidden[i]);
      return {{"layers", layers},
              {"lr", num(mlp.learning_rate)},
              {"batch", std::to_string(mlp.batch_size)},
              {"epochs", std::to_string(mlp.epochs)},
              {"loss", mlp.loss == MlpLoss::SquaredError ? "mse" : "cross_entropy"}};
    }
  }
  return {};
}

TrainConfig train_config_from(const ModelParams& model) {
  TrainConfig c;
  c.family = model.family;
  c.seed = model.seed;
  auto real = [](const std::string& v) { return std::stod(v); };
  auto integer = [](const std::string& v) { return std::stoi(v); };
  for (const auto& [k, v] : model.hyper) {
    switch (model.family) {
      case Family::Ridge:
        if (k == "alpha") c.ridge_alpha = real(v);
        break;
      case Family::Logistic:
        if (k == "C") c.logistic.C = real(v);
        if (k == "max_iter") c.logistic.max_iter = integer(v);
        if (k == "tol") c.logistic.tol = real(v);
        break;
      case Family::LinearSvc:
        if (k == "C") c.svc.C = real(v);
        if (k == "max_iter") c.svc.max_iter = integer(v);
        if (k == "tol") c.svc.tol = real(v);
        break;
      case Family::LinearRegression:
        break;
      case Family::Mlp:
        if (k == "layers") {
          c.mlp.hidden.clear();
          std::size_t start = 0;
          while (start < v.size()) {
            const std::size_t comma = std::min(v.find(',', start), v.size());
            c.mlp.hidden.push_back(std::stoi(v.substr(start, comma - start)));
            start = comma + 1;
          }
        }
        if (k == "lr") c.mlp.learning_rate = real(v);
        if (k == "batch") c.mlp.batch_size = integer(v);
        if (k == "epochs") c.mlp.epochs = integer(v);
        if (k == "loss") c.mlp.loss = v == "mse" ? MlpLoss::SquaredError : MlpLoss::CrossEntropy;
        break;
    }
  }
  c.mlp.seed = c.seed;
  return c;
}

}  // namespace bpchess::ml
