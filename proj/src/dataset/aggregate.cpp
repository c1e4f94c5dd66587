#include "bpchess/dataset/aggregate.hpp"

#include <cstring>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace bpchess::dataset {
namespace {

std::string_view bytes(std::span<const float> v) {
  return {reinterpret_cast<const char*>(v.data()), v.size() * sizeof(float)};
}

// Hash/equality over a prefix (before-vector) or the whole row, by row index.
struct RowKey {
  const Dataset* data;
  bool whole;
  std::string_view view(std::size_t r) const { return bytes(whole ? data->row(r) : data->before(r)); }
  std::size_t operator()(std::size_t r) const { return std::hash<std::string_view>{}(view(r)); }
  bool operator()(std::size_t a, std::size_t b) const { return view(a) == view(b); }
};

}  // namespace

Dataset aggregate_probabilities(const Dataset& binary) {
  const RowKey before_key{&binary, false};
  const RowKey pair_key{&binary, true};
  std::unordered_map<std::size_t, double, RowKey, RowKey> seen(16, before_key, before_key);
  std::unordered_map<std::size_t, std::size_t, RowKey, RowKey> pairs(16, pair_key, pair_key);
  std::vector<std::size_t> firsts;
  std::vector<double> played;

  for (std::size_t i = 0; i < binary.rows(); ++i) {
    const double l = binary.label[i];
    if (l != 0.0 && l != 1.0) throw std::invalid_argument("aggregation needs binary labels");
    seen[i] += l;  // each occurrence of a before-state has exactly one played row
    auto [it, fresh] = pairs.try_emplace(i, firsts.size());
    if (fresh) {
      firsts.push_back(i);
      played.push_back(0.0);
    }
    played[it->second] += l;
  }

  Dataset out = binary.subset(firsts);
  for (std::size_t k = 0; k < firsts.size(); ++k) {
    const double occurrences = seen.at(firsts[k]);
    out.label[k] = occurrences > 0 ? played[k] / occurrences : 0.0;
  }
  return out;
}

}  // namespace bpchess::dataset
