#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bpchess/dataset/dataset.hpp"

namespace bpchess::dataset {

struct SmoteOptions {
  int k = 5;
  std::uint64_t seed = 42;
};

struct SmoteResult {
  Dataset data;  // input rows followed by synthetic rows
  int k_used = 0;
  double minority_label = 1.0;
  /// (base row, neighbour row) in the input for each synthetic row, in order.
  std::vector<std::pair<std::size_t, std::size_t>> parents;
  std::vector<std::string> warnings;
};

/// Oversamples the minority class of a binary dataset until both classes
/// have equal counts. Synthetic points interpolate a minority row and one of
/// its k nearest minority neighbours (Euclidean distance after per-column
/// standardisation). Base rows are taken round-robin. Throws
/// std::invalid_argument when the minority class has fewer than 2 rows.
SmoteResult smote_balance(const Dataset& data, const SmoteOptions& options = {});

}  // namespace bpchess::dataset
