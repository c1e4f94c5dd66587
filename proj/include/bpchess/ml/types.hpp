#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <span>
#include <vector>

namespace bpchess::ml {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixMap = Eigen::Map<const Matrix<Scalar>>;

/// Row-major view over flat storage.
template <typename Scalar>
MatrixMap<Scalar> as_matrix(std::span<const Scalar> data, Eigen::Index cols) {
  return MatrixMap<Scalar>(data.data(), cols == 0 ? 0 : static_cast<Eigen::Index>(data.size()) / cols, cols);
}

/// Loss per iteration (or epoch) and the stopping state of an iterative fit.
struct FitTrace {
  std::vector<double> loss;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
};

/// X^T X of the centred columns, accumulated in double over row blocks.
template <typename Derived>
Eigen::MatrixXd centered_gram(const Eigen::MatrixBase<Derived>& X, const Eigen::VectorXd& mean) {
  const Eigen::Index d = X.cols();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  constexpr Eigen::Index kBlock = 4096;
  for (Eigen::Index r = 0; r < X.rows(); r += kBlock) {
    const Eigen::Index n = std::min(kBlock, X.rows() - r);
    const Eigen::MatrixXd block = X.middleRows(r, n).template cast<double>().rowwise() - mean.transpose();
    g.noalias() += block.transpose() * block;
  }
  return g;
}

template <typename Derived>
Eigen::VectorXd column_mean(const Eigen::MatrixBase<Derived>& X) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r) m += X.row(r).template cast<double>().transpose();
  return X.rows() > 0 ? Eigen::VectorXd(m / static_cast<double>(X.rows())) : m;
}

}  // namespace bpchess::ml
