#pragma once

#include <cmath>

#include "bpchess/ml/types.hpp"

namespace bpchess::ml {

/// Per-column mean and scale (population standard deviation; 1 for a
/// constant column) fitted on training data.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;
};

template <typename Derived>
Standardizer fit_standardizer(const Eigen::MatrixBase<Derived>& X) {
  Standardizer s;
  s.mean = column_mean(X);
  s.scale = Eigen::VectorXd::Zero(X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    s.scale += (X.row(r).template cast<double>().transpose() - s.mean).cwiseAbs2();
  }
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double sd = X.rows() > 0 ? std::sqrt(s.scale[j] / static_cast<double>(X.rows())) : 0.0;
    s.scale[j] = sd > 1e-12 * std::max(1.0, std::abs(s.mean[j])) ? sd : 1.0;
  }
  return s;
}

template <typename Scalar, typename Derived>
Matrix<Scalar> standardize(const Standardizer& s, const Eigen::MatrixBase<Derived>& X) {
  const Eigen::Array<double, 1, Eigen::Dynamic> mean = s.mean.transpose().array();
  const Eigen::Array<double, 1, Eigen::Dynamic> inv = s.scale.cwiseInverse().transpose().array();
  Matrix<Scalar> Z(X.rows(), X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    Z.row(r) = ((X.row(r).template cast<double>().array() - mean) * inv).template cast<Scalar>().matrix();
  }
  return Z;
}

}  // namespace bpchess::ml
