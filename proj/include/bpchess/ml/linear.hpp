#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "bpchess/ml/lbfgs.hpp"
#include "bpchess/ml/types.hpp"

namespace bpchess::ml {

/// score(x) = w.x + b.
template <typename Scalar>
struct LinearModel {
  Vector<Scalar> w;
  Scalar b = 0;

  template <typename Derived>
  Vector<Scalar> decision(const Eigen::MatrixBase<Derived>& X) const {
    return (X * w).array() + b;
  }
  /// 1 where the score is positive, else 0.
  template <typename Derived>
  Vector<Scalar> classify(const Eigen::MatrixBase<Derived>& X) const {
    return (decision(X).array() > Scalar(0)).template cast<Scalar>();
  }
};

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  return z >= 0 ? Scalar(1) / (Scalar(1) + std::exp(-z)) : std::exp(z) / (Scalar(1) + std::exp(z));
}

// ---------------------------------------------------------------- ridge

/// Least squares on labels mapped to {-1, +1} with penalty alpha*|w|^2 and
/// an unpenalised intercept, solved in closed form.
template <typename Derived, typename YDerived>
LinearModel<typename Derived::Scalar> fit_ridge_classifier(const Eigen::MatrixBase<Derived>& X,
                                                           const Eigen::MatrixBase<YDerived>& y, double alpha = 1.0) {
  using Scalar = typename Derived::Scalar;
  if (X.rows() == 0) throw std::invalid_argument("ridge classifier: no training rows");
  const Eigen::VectorXd mean = column_mean(X);
  const Eigen::VectorXd t = (2.0 * y.template cast<double>().array() - 1.0).matrix();
  const double t_mean = t.mean();
  Eigen::MatrixXd a = centered_gram(X, mean);
  a.diagonal().array() += alpha;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    rhs += (X.row(r).template cast<double>().transpose() - mean) * (t[r] - t_mean);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  const double dmax = ldlt.vectorD().cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-12 * std::max(1.0, dmax)) {
    throw std::domain_error("ridge classifier: singular normal system; use alpha > 0");
  }
  const Eigen::VectorXd w = ldlt.solve(rhs);
  LinearModel<Scalar> m;
  m.w = w.cast<Scalar>();
  m.b = static_cast<Scalar>(t_mean - mean.dot(w));
  return m;
}

// ------------------------------------------------------------- logistic

struct LogisticOptions {
  double C = 0.1;
  int max_iter = 4000;
  double tol = 1e-4;
};

/// Mean log-loss + |w|^2 / (2 C n) at theta = [w; b]; writes the gradient.
template <typename Derived, typename YDerived>
double logistic_objective(const Eigen::MatrixBase<Derived>& X, const Eigen::MatrixBase<YDerived>& y,
                          const Eigen::VectorXd& theta, double C, Eigen::VectorXd* grad) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index d = X.cols();
  const double n = static_cast<double>(X.rows());
  const Vector<Scalar> w = theta.head(d).cast<Scalar>();
  const Vector<Scalar> z = (X * w).array() + static_cast<Scalar>(theta[d]);
  double loss = 0.0;
  Vector<Scalar> r(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double zi = z[i];
    const double yi = y[i];
    // log(1 + exp(z)) - y z, computed stably.
    loss += (zi > 0 ? zi + std::log1p(std::exp(-zi)) : std::log1p(std::exp(zi))) - yi * zi;
    r[i] = static_cast<Scalar>(sigmoid(zi) - yi);
  }
  const double reg = theta.head(d).squaredNorm() / (2.0 * C * n);
  if (grad) {
    grad->resize(d + 1);
    grad->head(d) = (X.transpose() * r).template cast<double>() / n + theta.head(d) / (C * n);
    (*grad)[d] = r.template cast<double>().sum() / n;
  }
  return loss / n + reg;
}

template <typename Derived, typename YDerived>
LinearModel<typename Derived::Scalar> fit_logistic_regression(const Eigen::MatrixBase<Derived>& X,
                                                              const Eigen::MatrixBase<YDerived>& y,
                                                              const LogisticOptions& options = {},
                                                              FitTrace* trace = nullptr) {
  using Scalar = typename Derived::Scalar;
  if (X.rows() == 0) throw std::invalid_argument("logistic regression: no training rows");
  if (!(options.C > 0)) throw std::invalid_argument("logistic regression: C must be positive");
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(X.cols() + 1);
  auto f = [&](const Eigen::VectorXd& t, Eigen::VectorXd& g) {
    const double v = logistic_objective(X, y, t, options.C, &g);
    if (!std::isfinite(v)) throw std::runtime_error("logistic regression: non-finite loss");
    return v;
  };
  FitTrace tr = lbfgs_minimize(f, theta, {options.max_iter, options.tol, 10});
  if (trace) *trace = std::move(tr);
  LinearModel<Scalar> m;
  m.w = theta.head(X.cols()).template cast<Scalar>();
  m.b = static_cast<Scalar>(theta[X.cols()]);
  return m;
}

template <typename Scalar, typename Derived>
Vector<Scalar> predict_proba(const LinearModel<Scalar>& m, const Eigen::MatrixBase<Derived>& X) {
  return m.decision(X).unaryExpr([](Scalar z) { return sigmoid(z); });
}

// ------------------------------------------------------------------ svc

struct SvcOptions {
  double C = 1.0;
  int max_iter = 1000;
  double tol = 1e-4;
};

/// Mean squared hinge on labels {-1, +1} + |w|^2 / (2 C n).
template <typename Derived, typename YDerived>
double svc_objective(const Eigen::MatrixBase<Derived>& X, const Eigen::MatrixBase<YDerived>& y,
                     const Eigen::VectorXd& theta, double C, Eigen::VectorXd* grad) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index d = X.cols();
  const double n = static_cast<double>(X.rows());
  const Vector<Scalar> z = (X * theta.head(d).cast<Scalar>()).array() + static_cast<Scalar>(theta[d]);
  double loss = 0.0;
  Vector<Scalar> r(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double s = y[i] > 0.5 ? 1.0 : -1.0;
    const double margin = std::max(0.0, 1.0 - s * static_cast<double>(z[i]));
    loss += margin * margin;
    r[i] = static_cast<Scalar>(-2.0 * s * margin);
  }
  if (grad) {
    grad->resize(d + 1);
    grad->head(d) = (X.transpose() * r).template cast<double>() / n + theta.head(d) / (C * n);
    (*grad)[d] = r.template cast<double>().sum() / n;
  }
  return loss / n + theta.head(d).squaredNorm() / (2.0 * C * n);
}

template <typename Derived, typename YDerived>
LinearModel<typename Derived::Scalar> fit_linear_svc(const Eigen::MatrixBase<Derived>& X,
                                                     const Eigen::MatrixBase<YDerived>& y,
                                                     const SvcOptions& options = {}, FitTrace* trace = nullptr) {
  using Scalar = typename Derived::Scalar;
  if (X.rows() == 0) throw std::invalid_argument("linear SVC: no training rows");
  if (!(options.C > 0)) throw std::invalid_argument("linear SVC: C must be positive");
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(X.cols() + 1);
  auto f = [&](const Eigen::VectorXd& t, Eigen::VectorXd& g) {
    const double v = svc_objective(X, y, t, options.C, &g);
    if (!std::isfinite(v)) throw std::runtime_error("linear SVC: non-finite loss");
    return v;
  };
  FitTrace tr = lbfgs_minimize(f, theta, {options.max_iter, options.tol, 10});
  if (trace) *trace = std::move(tr);
  LinearModel<Scalar> m;
  m.w = theta.head(X.cols()).template cast<Scalar>();
  m.b = static_cast<Scalar>(theta[X.cols()]);
  return m;
}

// ----------------------------------------------------------- regression

struct LinearRegressionOptions {
  /// Ridge added only when X^T X is numerically singular.
  double fallback_alpha = 1e-8;
};

/// Ordinary least squares with intercept. When the centred Gram matrix is
/// rank deficient, a tiny ridge is added and `warning` is filled.
template <typename Derived, typename YDerived>
LinearModel<typename Derived::Scalar> fit_linear_regression(const Eigen::MatrixBase<Derived>& X,
                                                            const Eigen::MatrixBase<YDerived>& y,
                                                            const LinearRegressionOptions& options = {},
                                                            std::string* warning = nullptr) {
  using Scalar = typename Derived::Scalar;
  if (X.rows() == 0) throw std::invalid_argument("linear regression: no training rows");
  const Eigen::VectorXd mean = column_mean(X);
  const Eigen::VectorXd t = y.template cast<double>();
  const double t_mean = t.mean();
  Eigen::MatrixXd a = centered_gram(X, mean);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    rhs += (X.row(r).template cast<double>().transpose() - mean) * (t[r] - t_mean);
  }
  Eigen::VectorXd w;
  if (X.cols() > 0) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    const Eigen::VectorXd dd = ldlt.vectorD().cwiseAbs();
    const double scale = std::max(1.0, dd.maxCoeff());
    if (ldlt.info() != Eigen::Success || dd.minCoeff() <= 1e-10 * scale) {
      if (warning) *warning = "linear regression: rank-deficient design, adding ridge alpha=" +
                              std::to_string(options.fallback_alpha * scale);
      a.diagonal().array() += options.fallback_alpha * scale;
      ldlt.compute(a);
    }
    w = ldlt.solve(rhs);
  } else {
    w = Eigen::VectorXd(0);
  }
  LinearModel<Scalar> m;
  m.w = w.cast<Scalar>();
  m.b = static_cast<Scalar>(t_mean - mean.dot(w));
  return m;
}

}  // namespace bpchess::ml
