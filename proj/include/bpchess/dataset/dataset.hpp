#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bpchess::dataset {

/// Rows of (before, after) feature vectors with bookkeeping columns.
/// Features are stored row-major as floats: row i occupies
/// x[i*width() .. (i+1)*width()), before-vector first.
struct Dataset {
  std::string schema_version;
  bool advanced = false;
  int bucket = 0;
  std::vector<std::string> feature_names;  // one snapshot's names

  std::vector<std::string> game_ids;  // distinct games, first-seen order
  std::vector<float> x;
  std::vector<double> label;
  std::vector<std::int32_t> game;  // index into game_ids
  std::vector<std::int32_t> ply;
  std::vector<std::string> move;
  std::vector<std::uint8_t> synthetic;

  std::size_t snapshot_width() const { return feature_names.size(); }
  std::size_t width() const { return 2 * feature_names.size(); }
  std::size_t rows() const { return label.size(); }
  bool empty() const { return label.empty(); }

  std::span<const float> row(std::size_t i) const { return {x.data() + i * width(), width()}; }
  std::span<float> row(std::size_t i) { return {x.data() + i * width(), width()}; }
  std::span<const float> before(std::size_t i) const { return row(i).first(snapshot_width()); }
  std::span<const float> after(std::size_t i) const { return row(i).last(snapshot_width()); }

  /// Copy of the layout fields with no rows.
  Dataset empty_like() const;
  std::int32_t add_game(std::string id);
  void push_row(std::span<const float> features, double label, std::int32_t game, std::int32_t ply,
                std::string move, bool synthetic = false);
  /// Appends every row of `other` (same layout), remapping game ids.
  void append(const Dataset& other);
  /// Rows at the given positions, in that order.
  Dataset subset(std::span<const std::size_t> rows) const;
  void reserve(std::size_t rows);

  std::size_t count_label(double value) const;
};

/// Counts at each pipeline stage plus the configuration that produced them.
struct Provenance {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> sources;
  std::vector<std::pair<std::string, std::size_t>> counts;

  void set_count(const std::string& key, std::size_t value);
  std::size_t count(const std::string& key) const;
  /// key=value config lines (re-runnable), counts and sources as # comments.
  std::string to_text() const;
};

}  // namespace bpchess::dataset
