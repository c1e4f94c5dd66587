#include "bpchess/dataset/dataset.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bpchess::dataset {

Dataset Dataset::empty_like() const {
  Dataset d;
  d.schema_version = schema_version;
  d.advanced = advanced;
  d.bucket = bucket;
  d.feature_names = feature_names;
  return d;
}

std::int32_t Dataset::add_game(std::string id) {
  game_ids.push_back(std::move(id));
  return static_cast<std::int32_t>(game_ids.size() - 1);
}

void Dataset::push_row(std::span<const float> features, double lbl, std::int32_t g, std::int32_t p,
                       std::string mv, bool synth) {
  if (features.size() != width()) throw std::invalid_argument("row width does not match dataset layout");
  x.insert(x.end(), features.begin(), features.end());
  label.push_back(lbl);
  game.push_back(g);
  ply.push_back(p);
  move.push_back(std::move(mv));
  synthetic.push_back(synth ? 1 : 0);
}

void Dataset::append(const Dataset& other) {
  if (other.feature_names != feature_names) throw std::invalid_argument("cannot append datasets with different layouts");
  const auto offset = static_cast<std::int32_t>(game_ids.size());
  game_ids.insert(game_ids.end(), other.game_ids.begin(), other.game_ids.end());
  x.insert(x.end(), other.x.begin(), other.x.end());
  label.insert(label.end(), other.label.begin(), other.label.end());
  for (auto g : other.game) game.push_back(g + offset);
  ply.insert(ply.end(), other.ply.begin(), other.ply.end());
  move.insert(move.end(), other.move.begin(), other.move.end());
  synthetic.insert(synthetic.end(), other.synthetic.begin(), other.synthetic.end());
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset d = empty_like();
  d.reserve(rows.size());
  std::unordered_map<std::int32_t, std::int32_t> remap;
  for (std::size_t r : rows) {
    auto [it, fresh] = remap.try_emplace(game[r], 0);
    if (fresh) it->second = d.add_game(game_ids[game[r]]);
    d.push_row(row(r), label[r], it->second, ply[r], move[r], synthetic[r] != 0);
  }
  return d;
}

void Dataset::reserve(std::size_t n) {
  x.reserve(n * width());
  label.reserve(n);
  game.reserve(n);
  ply.reserve(n);
  move.reserve(n);
  synthetic.reserve(n);
}

std::size_t Dataset::count_label(double value) const {
  std::size_t n = 0;
  for (double l : label) n += l == value;
  return n;
}

void Provenance::set_count(const std::string& key, std::size_t value) {
  for (auto& [k, v] : counts) {
    if (k == key) {
      v = value;
      return;
    }
  }
  counts.emplace_back(key, value);
}

std::size_t Provenance::count(const std::string& key) const {
  for (const auto& [k, v] : counts) {
    if (k == key) return v;
  }
  throw std::out_of_range("no provenance count " + key);
}

std::string Provenance::to_text() const {
  std::ostringstream os;
  os << "# bpchess provenance\n";
  for (const auto& [k, v] : config) os << k << '=' << v << '\n';
  for (const auto& s : sources) os << "# source " << s << '\n';
  for (const auto& [k, v] : counts) os << "# count." << k << '=' << v << '\n';
  return os.str();
}

}  // namespace bpchess::dataset
