#include "bpchess/strategy/schema.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bpchess/strategy/game_kernel.hpp"
#include "bpchess/strategy/threads.hpp"

namespace bpchess::strategy {

const std::vector<std::string>& counter_registers() {
  static const std::vector<std::string> v{"pawn_moves", "knight_moves", "bishop_moves", "rook_moves", "queen_moves"};
  return v;
}

const std::vector<std::string>& basic_registers() {
  static const std::vector<std::string> v{"center_control",       "developed",       "space",
                                          "weak_square_pressure", "pawn_weaknesses", "early_queen_flag",
                                          "useless_pawn_moves",   "castle_state"};
  return v;
}

const std::vector<std::string>& advanced_registers() {
  static const std::vector<std::string> v{"defended_pieces", "attacks_made", "pins_made", "captures_made",
                                          "material_points"};
  return v;
}

FeatureSchema make_schema(const StrategyConfig& config) {
  GameKernel game(config);
  bp::Kernel& kernel = game.kernel();
  const bp::KernelSnapshot snap = kernel.snapshot();

  std::unordered_map<std::string, std::size_t> index;
  std::unordered_map<std::string, const bp::Register*> regs;
  for (std::size_t t = 0, pos = 0; t < kernel.size(); ++t) {
    for (const bp::Register& r : kernel.thread(t).registers()) {
      index[r.name] = pos++;
      regs[r.name] = &r;
    }
  }

  std::vector<std::string> per_color = counter_registers();
  per_color.insert(per_color.end(), basic_registers().begin(), basic_registers().end());
  if (config.advanced) per_color.insert(per_color.end(), advanced_registers().begin(), advanced_registers().end());

  FeatureSchema s;
  s.advanced = config.advanced;
  s.kernel_schema_id = snap.schema_id;
  for (const auto& name : per_color) {
    s.white_slots.push_back(index.at(color_register(chess::Color::White, name)));
    s.black_slots.push_back(index.at(color_register(chess::Color::Black, name)));
  }
  s.ply_slot = index.at(kPlyRegister);

  for (const char* prefix : {"own_", "opp_"}) {
    for (const auto& name : per_color) {
      const bp::Register& r = *regs.at(color_register(chess::Color::White, name));
      s.names.push_back(prefix + name);
      s.lo.push_back(r.lo);
      s.hi.push_back(r.hi);
    }
  }
  s.names.push_back("ply");
  s.lo.push_back(0);
  s.hi.push_back(kUnbounded);

  std::ostringstream v;
  v << "bpchess-features-1-" << (config.advanced ? "advanced" : "basic") << "-q" << config.early_queen_moves;
  s.version = v.str();
  return s;
}

void encode_as(const bp::KernelSnapshot& snapshot, const FeatureSchema& schema, int own_color,
               std::span<float> out) {
  if (snapshot.schema_id != schema.kernel_schema_id) {
    throw std::invalid_argument("snapshot register layout does not match feature schema " + schema.version);
  }
  if (out.size() != schema.size()) throw std::invalid_argument("feature buffer has wrong length");
  const auto& own = own_color == 0 ? schema.white_slots : schema.black_slots;
  const auto& opp = own_color == 0 ? schema.black_slots : schema.white_slots;
  const std::size_t n = schema.per_color();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<float>(snapshot.values[own[i]]);
    out[n + i] = static_cast<float>(snapshot.values[opp[i]]);
  }
  out[2 * n] = static_cast<float>(snapshot.values[schema.ply_slot]);
}

void encode_into(const bp::KernelSnapshot& snapshot, const FeatureSchema& schema, std::span<float> out) {
  if (snapshot.schema_id != schema.kernel_schema_id) {
    throw std::invalid_argument("snapshot register layout does not match feature schema " + schema.version);
  }
  const auto ply = static_cast<long long>(snapshot.values[schema.ply_slot]);
  encode_as(snapshot, schema, static_cast<int>(ply % 2), out);
}

std::vector<float> encode(const bp::KernelSnapshot& snapshot, const FeatureSchema& schema) {
  std::vector<float> out(schema.size());
  encode_into(snapshot, schema, out);
  return out;
}

std::string schema_text(const FeatureSchema& schema) {
  std::ostringstream os;
  os << "version " << schema.version << '\n';
  for (std::size_t i = 0; i < schema.size(); ++i) {
    os << schema.names[i] << ':' << schema.lo[i] << "..";
    if (schema.hi[i] == kUnbounded) {
      os << '*';
    } else {
      os << schema.hi[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace bpchess::strategy
