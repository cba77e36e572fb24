#pragma once

#include <complex>
#include <vector>

#include "qcs/statevector.hpp"

namespace qcs::testing {

using CMatrix = std::vector<std::vector<Amplitude>>;

// Dense matrix of a gate on an n-qubit register, built column by column from
// basis states. Independent route for unitarity and application checks.
inline CMatrix gate_matrix(const Gate& g, int n) {
    const std::size_t dim = std::size_t{1} << n;
    CMatrix mat(dim, std::vector<Amplitude>(dim, Amplitude{0.0, 0.0}));
    for (std::size_t col = 0; col < dim; ++col) {
        QuantumState st = new_basis_state(n, col);
        st.apply(g);
        for (std::size_t row = 0; row < dim; ++row) mat[row][col] = st.amplitudes()[row];
    }
    return mat;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    const std::size_t dim = a.size();
    CMatrix out(dim, std::vector<Amplitude>(dim, Amplitude{0.0, 0.0}));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            if (a[i][k] == Amplitude{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < dim; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline std::vector<Amplitude> matvec(const CMatrix& a, const std::vector<Amplitude>& v) {
    std::vector<Amplitude> out(a.size(), Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

inline double unitarity_defect(const CMatrix& u) {
    const std::size_t dim = u.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Amplitude dot{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) dot += std::conj(u[k][i]) * u[k][j];
            const double want = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - Amplitude{want, 0.0}));
        }
    return worst;
}

}  // namespace qcs::testing
