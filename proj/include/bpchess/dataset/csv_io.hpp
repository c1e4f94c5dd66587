#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bpchess/dataset/dataset.hpp"

namespace bpchess::dataset {

/// Thrown for malformed files, unknown columns and schema mismatches.
class DatasetFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes "# schema=<version> advanced=<0|1> bucket=<b>", the header row
/// (game_id, ply, move, before_*, after_*, label) and one line per row.
/// Features use 9 significant digits; labels the shortest exact form.
void write_dataset(std::ostream& out, const Dataset& data);
void write_dataset(const std::string& path, const Dataset& data);

/// Reads a dataset. When `expected_version` is set, a different schema
/// version is rejected.
Dataset read_dataset(std::istream& in, const std::optional<std::string>& expected_version = std::nullopt);
Dataset read_dataset(const std::string& path, const std::optional<std::string>& expected_version = std::nullopt);

}  // namespace bpchess::dataset
