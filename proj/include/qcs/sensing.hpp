#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "qcs/encoding.hpp"
#include "qcs/rng.hpp"

namespace qcs {

enum class MatrixClass { BinaryDense, BinarySparse, SinglePixel, ColumnSupportedUniform };

std::string to_string(MatrixClass cls);
MatrixClass matrix_class_from_string(const std::string& name);

struct SensingMatrix {
    Eigen::MatrixXd entries;  // m rows (measurements) x n columns (pixels)
    MatrixClass cls = MatrixClass::BinaryDense;
    std::uint64_t seed = 0;

    int m() const { return static_cast<int>(entries.rows()); }
    int n() const { return static_cast<int>(entries.cols()); }
};

// Draws an m x n matrix of the given class, reproducibly from (class, m, n,
// seed):
//   binary_dense   entries i.i.d. Bernoulli(1/2)
//   binary_sparse  entries i.i.d. Bernoulli(1/5)
//   single_pixel   one 1 per row; distinct columns unless allow_repeats
//   column_supported_uniform  m distinct support columns, uniform(0,1) there
// All-zero binary draws are redrawn (at most 100 times, then rejected).
SensingMatrix generate_matrix(MatrixClass cls, int m, int n, std::uint64_t seed,
                              bool allow_repeats = false);

// x = A y; dimensions must agree.
Eigen::VectorXd apply_sensing(const SensingMatrix& a, const Signal& y);

// Round-trippable CSV: a "m,n,class,seed" header line, one line of those
// values, then m rows of entries.
void save_matrix_csv(const std::string& path, const SensingMatrix& a);
SensingMatrix load_matrix_csv(const std::string& path);

}  // namespace qcs
