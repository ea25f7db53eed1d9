#pragma once

#include <filesystem>

#include "kaczfact/sparse_matrix.hpp"

namespace kaczfact {

// Matrix Market coordinate format, `%%MatrixMarket matrix coordinate real
// general`, 1-based indices. Values are written with round-trippable
// precision so write-then-read is the identity.
void write_matrix_market(const SparseMatrix& x, const std::filesystem::path& path);

SparseMatrix read_matrix_market(const std::filesystem::path& path);

}  // namespace kaczfact
