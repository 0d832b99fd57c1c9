#pragma once

#include <string>

#include "subspace/linalg.hpp"

namespace subspace {

// Headerless CSV, one matrix row per line, '.' decimal separator.
// Rejects ragged rows, empty files, and non-finite values.
Matrix load_csv(const std::string& path);

void save_csv(const Matrix& m, const std::string& path);

}  // namespace subspace
