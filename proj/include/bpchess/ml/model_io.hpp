#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bpchess/ml/model.hpp"

namespace bpchess::ml {

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text artifact: header lines (family, task, schema, dims, seed,
/// "hyper key=value"), standardisation, then named row-major matrices.
/// Numbers use the shortest form that reads back exactly.
void write_model(std::ostream& out, const ModelParams& model);
void write_model(const std::string& path, const ModelParams& model);
ModelParams read_model(std::istream& in);
ModelParams read_model(const std::string& path);

}  // namespace bpchess::ml
