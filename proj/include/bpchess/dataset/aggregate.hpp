#pragma once

#include "bpchess/dataset/dataset.hpp"

namespace bpchess::dataset {

/// Collapses binary rows into one row per distinct (before, after) pair with
/// label = times that move was played / times the before-state was seen.
/// Output rows keep first-occurrence order and bookkeeping.
Dataset aggregate_probabilities(const Dataset& binary);

}  // namespace bpchess::dataset
