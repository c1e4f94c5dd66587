#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpchess/ml/types.hpp"
#include "bpchess/util/random.hpp"

namespace bpchess::ml {

enum class MlpLoss { SquaredError, CrossEntropy };

struct MlpOptions {
  std::vector<int> hidden{32, 16};
  double learning_rate = 1e-3;
  int batch_size = 128;
  int epochs = 200;
  MlpLoss loss = MlpLoss::SquaredError;
  std::uint64_t seed = 42;
};

/// Fully connected network: ReLU hidden layers, one sigmoid output unit.
/// Layer l maps activations a (batch x in) to a * weights[l]^T + biases[l]^T.
template <typename Scalar>
struct Mlp {
  std::vector<Matrix<Scalar>> weights;  // out x in
  std::vector<Vector<Scalar>> biases;

  std::size_t layers() const { return weights.size(); }

  template <typename Derived>
  Vector<Scalar> predict(const Eigen::MatrixBase<Derived>& X) const {
    Matrix<Scalar> a = X.template cast<Scalar>();
    for (std::size_t l = 0; l < weights.size(); ++l) {
      Matrix<Scalar> z = a * weights[l].transpose();
      z.rowwise() += biases[l].transpose();
      if (l + 1 < weights.size()) {
        a = z.cwiseMax(Scalar(0));
      } else {
        a = z.unaryExpr([](Scalar v) {
          return v >= 0 ? Scalar(1) / (Scalar(1) + std::exp(-v)) : std::exp(v) / (Scalar(1) + std::exp(v));
        });
      }
    }
    return a.col(0);
  }
};

template <typename Scalar>
struct MlpGradient {
  std::vector<Matrix<Scalar>> weights;
  std::vector<Vector<Scalar>> biases;
};

/// Glorot-uniform weights (limit sqrt(6 / (fan_in + fan_out))), zero biases.
template <typename Scalar>
Mlp<Scalar> init_mlp(Eigen::Index inputs, const std::vector<int>& hidden, std::uint64_t seed) {
  util::Rng rng(util::derive_seed(seed, "mlp.init"));
  Mlp<Scalar> m;
  Eigen::Index fan_in = inputs;
  std::vector<int> sizes = hidden;
  sizes.push_back(1);
  for (int out : sizes) {
    if (out <= 0) throw std::invalid_argument("MLP layer sizes must be positive");
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + out));
    Matrix<Scalar> w(out, fan_in);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = static_cast<Scalar>(rng.uniform(-limit, limit));
    m.weights.push_back(std::move(w));
    m.biases.push_back(Vector<Scalar>::Zero(out));
    fan_in = out;
  }
  return m;
}

/// Mean loss over the batch; fills `grad` by backpropagation when given.
template <typename Scalar, typename Derived, typename YDerived>
double mlp_loss(const Mlp<Scalar>& m, const Eigen::MatrixBase<Derived>& X, const Eigen::MatrixBase<YDerived>& y,
                MlpLoss loss, MlpGradient<Scalar>* grad) {
  const std::size_t L = m.layers();
  const Eigen::Index n = X.rows();
  std::vector<Matrix<Scalar>> acts;  // acts[0] = input, acts[l+1] = output of layer l
  acts.reserve(L + 1);
  acts.push_back(X.template cast<Scalar>());
  for (std::size_t l = 0; l < L; ++l) {
    Matrix<Scalar> z = acts.back() * m.weights[l].transpose();
    z.rowwise() += m.biases[l].transpose();
    if (l + 1 < L) {
      acts.push_back(z.cwiseMax(Scalar(0)));
    } else {
      acts.push_back(z.unaryExpr([](Scalar v) {
        return v >= 0 ? Scalar(1) / (Scalar(1) + std::exp(-v)) : std::exp(v) / (Scalar(1) + std::exp(v));
      }));
    }
  }
  const auto p = acts.back().col(0);
  double total = 0.0;
  Matrix<Scalar> delta(n, 1);  // dLoss/dz of the current layer
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pi = p[i];
    const double yi = y[i];
    if (loss == MlpLoss::SquaredError) {
      total += (pi - yi) * (pi - yi);
      delta(i, 0) = static_cast<Scalar>(2.0 * (pi - yi) * pi * (1.0 - pi) * inv_n);
    } else {
      const double eps = 1e-12;
      total -= yi * std::log(std::max(pi, eps)) + (1.0 - yi) * std::log(std::max(1.0 - pi, eps));
      delta(i, 0) = static_cast<Scalar>((pi - yi) * inv_n);
    }
  }
  if (grad) {
    grad->weights.resize(L);
    grad->biases.resize(L);
    for (std::size_t l = L; l-- > 0;) {
      grad->weights[l] = delta.transpose() * acts[l];
      grad->biases[l] = delta.colwise().sum().transpose();
      if (l > 0) {
        Matrix<Scalar> back = delta * m.weights[l];
        delta = (acts[l].array() > Scalar(0)).select(back.array(), Scalar(0)).matrix();
      }
    }
  }
  return total * inv_n;
}

/// Mini-batch Adam (beta 0.9 / 0.999). Records the mean training loss after
/// each epoch. Throws when the loss exceeds ten times its initial value.
template <typename Derived, typename YDerived>
Mlp<typename Derived::Scalar> fit_mlp(const Eigen::MatrixBase<Derived>& X, const Eigen::MatrixBase<YDerived>& y,
                                      const MlpOptions& options = {}, FitTrace* trace = nullptr) {
  using Scalar = typename Derived::Scalar;
  if (X.rows() == 0) throw std::invalid_argument("MLP: no training rows");
  if (options.batch_size <= 0 || options.epochs < 0) throw std::invalid_argument("MLP: bad batch size or epochs");
  Mlp<Scalar> m = init_mlp<Scalar>(X.cols(), options.hidden, options.seed);
  const std::size_t L = m.layers();
  MlpGradient<Scalar> g, mom, vel;
  for (std::size_t l = 0; l < L; ++l) {
    mom.weights.push_back(Matrix<Scalar>::Zero(m.weights[l].rows(), m.weights[l].cols()));
    vel.weights.push_back(mom.weights.back());
    mom.biases.push_back(Vector<Scalar>::Zero(m.biases[l].size()));
    vel.biases.push_back(mom.biases.back());
  }
  FitTrace tr;
  const double initial = mlp_loss(m, X, y, options.loss, static_cast<MlpGradient<Scalar>*>(nullptr));
  tr.loss.push_back(initial);

  util::Rng rng(util::derive_seed(options.seed, "mlp.shuffle"));
  std::vector<Eigen::Index> order(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) order[i] = i;
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  const auto lr = static_cast<Scalar>(options.learning_rate);
  long step = 0;
  Matrix<Scalar> xb;
  Vector<Scalar> yb;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    double epoch_loss = 0.0;
    for (Eigen::Index start = 0; start < X.rows(); start += options.batch_size) {
      const Eigen::Index nb = std::min<Eigen::Index>(options.batch_size, X.rows() - start);
      xb.resize(nb, X.cols());
      yb.resize(nb);
      for (Eigen::Index i = 0; i < nb; ++i) {
        xb.row(i) = X.row(order[start + i]).template cast<Scalar>();
        yb[i] = static_cast<Scalar>(y[order[start + i]]);
      }
      epoch_loss += mlp_loss(m, xb, yb, options.loss, &g) * static_cast<double>(nb);
      ++step;
      const auto c1 = static_cast<Scalar>(1.0 - std::pow(b1, step));
      const auto c2 = static_cast<Scalar>(1.0 - std::pow(b2, step));
      auto update = [&](auto& param, auto& grad, auto& mo, auto& ve) {
        mo = Scalar(b1) * mo + Scalar(1 - b1) * grad;
        ve = Scalar(b2) * ve + Scalar(1 - b2) * grad.cwiseAbs2();
        param.array() -= lr * (mo.array() / c1) / ((ve.array() / c2).sqrt() + Scalar(eps));
      };
      for (std::size_t l = 0; l < L; ++l) {
        update(m.weights[l], g.weights[l], mom.weights[l], vel.weights[l]);
        update(m.biases[l], g.biases[l], mom.biases[l], vel.biases[l]);
      }
    }
    epoch_loss /= static_cast<double>(X.rows());
    tr.loss.push_back(epoch_loss);
    tr.iterations = epoch + 1;
    if (!std::isfinite(epoch_loss) || epoch_loss > 10.0 * initial) {
      throw std::runtime_error("MLP diverged at epoch " + std::to_string(epoch + 1) + " (loss " +
                               std::to_string(epoch_loss) + "); try a smaller learning rate");
    }
  }
  tr.converged = true;
  if (trace) *trace = std::move(tr);
  return m;
}

}  // namespace bpchess::ml
