#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bpchess/bp/kernel.hpp"

namespace bpchess::strategy {

inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

struct StrategyConfig {
  bool advanced = false;
  /// The early-queen flag is raised by a queen move within this many of the
  /// mover's own moves.
  int early_queen_moves = 6;
};

/// Per-colour register names in feature order.
const std::vector<std::string>& counter_registers();
const std::vector<std::string>& basic_registers();
const std::vector<std::string>& advanced_registers();

/// Ordered feature layout: mover block ("own_"), opponent block ("opp_"),
/// then "ply". 13 + 13 + 1 = 27 registers without advanced strategies,
/// 18 + 18 + 1 = 37 with them.
struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<std::int64_t> lo, hi;
  bool advanced = false;
  std::string version;

  // Mapping from kernel snapshot positions.
  std::uint64_t kernel_schema_id = 0;
  std::vector<std::size_t> white_slots;  // snapshot index per per-colour feature
  std::vector<std::size_t> black_slots;
  std::size_t ply_slot = 0;

  std::size_t per_color() const { return white_slots.size(); }
  std::size_t size() const { return names.size(); }
};

FeatureSchema make_schema(const StrategyConfig& config);

/// Fixed-order feature vector for a snapshot, oriented to the side to move
/// in that snapshot (ply parity). Throws std::invalid_argument when the
/// snapshot comes from a kernel with a different register layout.
std::vector<float> encode(const bp::KernelSnapshot& snapshot, const FeatureSchema& schema);
void encode_into(const bp::KernelSnapshot& snapshot, const FeatureSchema& schema, std::span<float> out);

/// Same layout, but with "own" fixed to the given colour (0 White, 1 Black).
void encode_as(const bp::KernelSnapshot& snapshot, const FeatureSchema& schema, int own_color,
               std::span<float> out);

/// Standalone schema file: "version <id>" then "name:lo..hi" per register
/// ("*" for an open upper bound).
std::string schema_text(const FeatureSchema& schema);

}  // namespace bpchess::strategy
