#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "bpchess/ml/types.hpp"

namespace bpchess::ml {

/// Percentage of predictions equal to the labels.
template <typename A, typename B>
double accuracy_percent(const Eigen::MatrixBase<A>& predicted, const Eigen::MatrixBase<B>& labels) {
  if (predicted.size() != labels.size()) throw std::invalid_argument("accuracy: length mismatch");
  if (labels.size() == 0) throw std::invalid_argument("accuracy: empty test set");
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < labels.size(); ++i) hits += (predicted[i] > 0.5) == (labels[i] > 0.5);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(labels.size());
}

/// Mean |prediction - label| x 100, predictions clamped to [0, 1].
template <typename A, typename B>
double mean_error_points(const Eigen::MatrixBase<A>& predicted, const Eigen::MatrixBase<B>& labels) {
  if (predicted.size() != labels.size()) throw std::invalid_argument("mean error: length mismatch");
  if (labels.size() == 0) throw std::invalid_argument("mean error: empty test set");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(static_cast<double>(predicted[i]), 0.0, 1.0);
    sum += std::abs(p - static_cast<double>(labels[i]));
  }
  return 100.0 * sum / static_cast<double>(labels.size());
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

inline MeanStd mean_std(std::span<const double> v) {
  MeanStd r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  for (double x : v) r.std += (x - r.mean) * (x - r.mean);
  r.std = std::sqrt(r.std / static_cast<double>(v.size()));
  return r;
}

}  // namespace bpchess::ml
