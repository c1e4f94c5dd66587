#include "bpchess/dataset/split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bpchess/util/random.hpp"

namespace bpchess::dataset {

Split split_by_game(const Dataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) throw std::invalid_argument("test fraction must be in [0, 1)");
  std::vector<std::int32_t> games(data.game_ids.size());
  for (std::size_t g = 0; g < games.size(); ++g) games[g] = static_cast<std::int32_t>(g);
  util::Rng rng(util::derive_seed(seed, "split"));
  rng.shuffle(std::span(games));

  auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(games.size())));
  if (test_fraction > 0 && n_test == 0 && games.size() >= 2) n_test = 1;
  std::vector<std::uint8_t> in_test(games.size(), 0);
  for (std::size_t i = 0; i < n_test; ++i) in_test[games[i]] = 1;

  Split s;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (in_test[data.game[r]]) {
      if (!data.synthetic[r]) s.test.push_back(r);
    } else {
      s.train.push_back(r);
    }
  }
  return s;
}

std::vector<std::size_t> undersample_balanced(const Dataset& data, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (data.synthetic[r]) continue;
    (data.label[r] == 1.0 ? pos : neg).push_back(r);
  }
  auto& minority = pos.size() <= neg.size() ? pos : neg;
  auto& majority = pos.size() <= neg.size() ? neg : pos;
  util::Rng rng(util::derive_seed(seed, "undersample"));
  std::vector<std::size_t> out = minority;
  for (std::size_t i : util::sample_indices(majority.size(), minority.size(), rng)) out.push_back(majority[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bpchess::dataset
