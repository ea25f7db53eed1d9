#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kaczfact/sparse_matrix.hpp"

namespace kaczfact {

struct RatingsTriple {
    std::string reviewer_id;
    std::string product_id;
    int rating = 0;  // 1..5
    std::optional<std::int64_t> timestamp;
};

// Bijection between seen ids and [0, count), in first-appearance order.
struct IdMaps {
    std::unordered_map<std::string, Index> reviewer_to_row;
    std::unordered_map<std::string, Index> product_to_col;
    std::vector<std::string> row_to_reviewer;
    std::vector<std::string> col_to_product;
};

struct LoadReport {
    Index rows = 0;
    Index cols = 0;
    Index nnz = 0;
    double sparsity = 0.0;
    Index triples_read = 0;
    Index duplicates = 0;
};

struct MatrixReport {
    Index rows = 0;
    Index cols = 0;
    Index nnz = 0;
    double sparsity = 0.0;
    double min_stored = 0.0;
    double max_stored = 0.0;
};

struct RatingsData {
    SparseMatrix x;
    IdMaps ids;
    LoadReport report;
};

// Loads `reviewer_id,product_id,rating[,timestamp]` CSV lines into a ratings
// matrix. A header line is auto-detected. Duplicate (reviewer, product) pairs
// resolve to the last occurrence and are counted. `limit` > 0 caps the number
// of data rows read.
RatingsData load_ratings(const std::filesystem::path& path, Index limit = 0);

MatrixReport matrix_report(const SparseMatrix& x);

}  // namespace kaczfact
