#include "qcs/sensing.hpp"

#include <fstream>
#include <numeric>
#include <stdexcept>

#include "text_io.hpp"

namespace qcs {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// First m entries of a Fisher-Yates shuffle of [0, n): m distinct columns.
std::vector<int> distinct_columns(int m, int n, Rng& rng) {
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 0);
    for (int i = 0; i < m; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }
    cols.resize(static_cast<std::size_t>(m));
    return cols;
}

Eigen::MatrixXd draw_binary(int m, int n, double density, Rng& rng) {
    for (int tries = 0; tries < 100; ++tries) {
        Eigen::MatrixXd a(m, n);
        bool any = false;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                a(i, j) = rng.bernoulli(density) ? 1.0 : 0.0;
                any = any || a(i, j) != 0.0;
            }
        if (any) return a;
    }
    throw std::invalid_argument("binary sensing matrix kept drawing all-zero");
}

}  // namespace

std::string to_string(MatrixClass cls) {
    switch (cls) {
        case MatrixClass::BinaryDense: return "binary_dense";
        case MatrixClass::BinarySparse: return "binary_sparse";
        case MatrixClass::SinglePixel: return "single_pixel";
        case MatrixClass::ColumnSupportedUniform: return "column_supported_uniform";
    }
    throw std::invalid_argument("unknown matrix class");
}

MatrixClass matrix_class_from_string(const std::string& name) {
    if (name == "binary_dense") return MatrixClass::BinaryDense;
    if (name == "binary_sparse") return MatrixClass::BinarySparse;
    if (name == "single_pixel") return MatrixClass::SinglePixel;
    if (name == "column_supported_uniform") return MatrixClass::ColumnSupportedUniform;
    throw std::invalid_argument("unknown matrix class: " + name);
}

SensingMatrix generate_matrix(MatrixClass cls, int m, int n, std::uint64_t seed,
                              bool allow_repeats) {
    require(m >= 1, "sensing matrix needs at least one row");
    require(n >= 1, "sensing matrix needs at least one column");
    Rng rng(derive_seed(seed, hash_tag("sensing"), static_cast<std::uint64_t>(cls),
                        static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)));
    Eigen::MatrixXd a;
    switch (cls) {
        case MatrixClass::BinaryDense:
            a = draw_binary(m, n, 0.5, rng);
            break;
        case MatrixClass::BinarySparse:
            a = draw_binary(m, n, 0.2, rng);
            break;
        case MatrixClass::SinglePixel: {
            a = Eigen::MatrixXd::Zero(m, n);
            if (allow_repeats) {
                for (int i = 0; i < m; ++i)
                    a(i, static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))) = 1.0;
            } else {
                require(m <= n, "more single-pixel rows than distinct columns");
                auto cols = distinct_columns(m, n, rng);
                for (int i = 0; i < m; ++i) a(i, cols[static_cast<std::size_t>(i)]) = 1.0;
            }
            break;
        }
        case MatrixClass::ColumnSupportedUniform: {
            require(m <= n, "support size cannot exceed the column count");
            a = Eigen::MatrixXd::Zero(m, n);
            auto cols = distinct_columns(m, n, rng);
            for (int i = 0; i < m; ++i)
                for (int c : cols) a(i, c) = rng.uniform01();
            break;
        }
    }
    return {std::move(a), cls, seed};
}

Eigen::VectorXd apply_sensing(const SensingMatrix& a, const Signal& y) {
    require(static_cast<int>(y.size()) == a.n(), "signal length does not match matrix columns");
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(y.data(), a.n());
    return a.entries * v;
}

void save_matrix_csv(const std::string& path, const SensingMatrix& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "m,n,class,seed\n";
    out << a.m() << ',' << a.n() << ',' << to_string(a.cls) << ',' << a.seed << '\n';
    for (int i = 0; i < a.m(); ++i) {
        for (int j = 0; j < a.n(); ++j) {
            if (j) out << ',';
            out << detail::fmt_g17(a.entries(i, j));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SensingMatrix load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || detail::split_csv(line) != std::vector<std::string>{
            "m", "n", "class", "seed"})
        throw std::runtime_error("bad sensing matrix header in " + path);
    if (!std::getline(in, line)) throw std::runtime_error("truncated sensing matrix in " + path);
    auto meta = detail::split_csv(line);
    if (meta.size() != 4) throw std::runtime_error("bad sensing matrix metadata in " + path);
    SensingMatrix a;
    int m = std::stoi(meta[0]);
    int n = std::stoi(meta[1]);
    a.cls = matrix_class_from_string(meta[2]);
    a.seed = std::stoull(meta[3]);
    a.entries = Eigen::MatrixXd::Zero(m, n);
    for (int i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("truncated sensing matrix in " + path);
        auto cells = detail::split_csv(line);
        if (static_cast<int>(cells.size()) != n)
            throw std::runtime_error("bad sensing matrix row in " + path);
        for (int j = 0; j < n; ++j) a.entries(i, j) = std::stod(cells[static_cast<std::size_t>(j)]);
    }
    return a;
}

}  // namespace qcs
