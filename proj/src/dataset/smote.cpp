#include "bpchess/dataset/smote.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bpchess/util/random.hpp"

namespace bpchess::dataset {
namespace {

using RowMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Indices (into `rows`) of the k nearest other rows for every row.
std::vector<std::vector<std::uint32_t>> nearest_neighbours(const Dataset& data, const std::vector<std::size_t>& rows,
                                                           int k) {
  const std::size_t w = data.width();
  const std::size_t m = rows.size();

  // Column standardisation over the whole dataset.
  std::vector<double> mean(w, 0.0), sd(w, 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) mean[j] += r[j];
  }
  for (auto& v : mean) v /= static_cast<double>(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) sd[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
  }
  for (auto& v : sd) {
    v = std::sqrt(v / static_cast<double>(data.rows()));
    if (!(v > 0)) v = 1.0;
  }

  RowMatrix z(m, w);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = data.row(rows[i]);
    for (std::size_t j = 0; j < w; ++j) z(i, j) = static_cast<float>((r[j] - mean[j]) / sd[j]);
  }
  const Eigen::VectorXf norms = z.rowwise().squaredNorm();

  std::vector<std::vector<std::uint32_t>> out(m);
  constexpr std::size_t kBlock = 256;
  std::vector<std::pair<float, std::uint32_t>> best;
  for (std::size_t b0 = 0; b0 < m; b0 += kBlock) {
    const std::size_t nb = std::min(kBlock, m - b0);
    const RowMatrix dots = z.middleRows(b0, nb) * z.transpose();
    for (std::size_t q = 0; q < nb; ++q) {
      const std::size_t self = b0 + q;
      best.clear();
      for (std::size_t c = 0; c < m; ++c) {
        if (c == self) continue;
        const float d = std::max(0.0f, norms[self] + norms[c] - 2.0f * dots(q, c));
        const std::pair<float, std::uint32_t> cand{d, static_cast<std::uint32_t>(c)};
        if (best.size() < static_cast<std::size_t>(k)) {
          best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
        } else if (cand < best.back()) {
          best.pop_back();
          best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
        }
      }
      out[self].reserve(best.size());
      for (const auto& [d, c] : best) out[self].push_back(c);
    }
  }
  return out;
}

}  // namespace

SmoteResult smote_balance(const Dataset& data, const SmoteOptions& options) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (data.label[i] == 1.0) {
      pos.push_back(i);
    } else if (data.label[i] == 0.0) {
      neg.push_back(i);
    } else {
      throw std::invalid_argument("SMOTE needs binary labels");
    }
  }
  SmoteResult result;
  result.data = data;
  const bool pos_minor = pos.size() <= neg.size();
  const auto& minority = pos_minor ? pos : neg;
  const std::size_t majority = pos_minor ? neg.size() : pos.size();
  result.minority_label = pos_minor ? 1.0 : 0.0;
  if (minority.size() < 2) throw std::invalid_argument("SMOTE needs at least 2 minority rows");
  if (options.k < 1) throw std::invalid_argument("SMOTE needs k >= 1");

  result.k_used = options.k;
  if (static_cast<std::size_t>(options.k) > minority.size() - 1) {
    result.k_used = static_cast<int>(minority.size() - 1);
    result.warnings.push_back("k=" + std::to_string(options.k) + " exceeds minority size - 1; using k=" +
                              std::to_string(result.k_used));
  }
  const std::size_t need = majority - minority.size();
  if (need == 0) return result;

  const auto nn = nearest_neighbours(data, minority, result.k_used);
  util::Rng rng(util::derive_seed(options.seed, "smote"));
  const std::size_t w = data.width();
  std::vector<float> synth(w);
  result.data.reserve(data.rows() + need);
  result.parents.reserve(need);
  for (std::size_t s = 0; s < need; ++s) {
    const std::size_t base_pos = s % minority.size();
    const auto& cands = nn[base_pos];
    const std::size_t base = minority[base_pos];
    const std::size_t other = minority[cands[rng.below(cands.size())]];
    const double u = rng.unit();
    const auto a = data.row(base);
    const auto b = data.row(other);
    for (std::size_t j = 0; j < w; ++j) {
      synth[j] = static_cast<float>(static_cast<double>(a[j]) + u * (static_cast<double>(b[j]) - a[j]));
    }
    result.data.push_row(synth, result.minority_label, data.game[base], data.ply[base], "<synthetic>", true);
    result.parents.emplace_back(base, other);
  }
  return result;
}

}  // namespace bpchess::dataset
