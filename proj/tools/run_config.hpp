#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpchess/dataset/filter.hpp"
#include "bpchess/ml/model.hpp"
#include "bpchess/strategy/schema.hpp"

namespace bpchess::cli {

/// Exit 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exit 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value settings. Resolution order, lowest first: built-in
/// defaults, BPCHESS_SEED (seed only), config file, command flags.
class RunConfig {
 public:
  RunConfig();

  /// Reads a config file. '#' starts a comment line; repeated keys append
  /// for list keys (pgn) and replace otherwise. Unknown keys are usage errors.
  void load_file(const std::string& path);
  void load_env();
  void set(const std::string& key, const std::string& value);
  void add_pgn(const std::string& path) { pgn_.push_back(path); }
  void clear_pgn() { pgn_.clear(); }

  const std::string& get(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;
  const std::vector<std::string>& pgn() const { return pgn_; }

  /// Every key in a fixed order, as re-loadable "key=value" pairs.
  std::vector<std::pair<std::string, std::string>> entries() const;
  std::string dump() const;

  dataset::FilterConfig filter(int bucket) const;
  strategy::StrategyConfig strategy() const;
  ml::TrainConfig train(ml::Family family) const;

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::string> values_;
  std::vector<std::string> pgn_;
};

}  // namespace bpchess::cli
