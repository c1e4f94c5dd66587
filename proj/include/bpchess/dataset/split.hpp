#pragma once

#include <cstdint>
#include <vector>

#include "bpchess/dataset/dataset.hpp"

namespace bpchess::dataset {

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Random split by game: a shuffled test_fraction of the games go to test,
/// every row follows its game. Synthetic rows are never placed in test.
Split split_by_game(const Dataset& data, double test_fraction, std::uint64_t seed);

/// Row indices of a balanced binary subset: all minority rows plus an equal
/// random sample of the majority, in original order. Synthetic rows are
/// excluded.
std::vector<std::size_t> undersample_balanced(const Dataset& data, std::uint64_t seed);

}  // namespace bpchess::dataset
