#include "qcs/encoding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcs {

namespace {
constexpr double kPi = std::numbers::pi;
}

double remap_midpoint(double x, double p) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("pixel value outside [0, 1]");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("midpoint outside (0, 1)");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (p == 0.5) return x;  // the remap is the identity there; skip the tan round-trip
    double t = std::tan(kPi * (x - 0.5)) - std::tan(kPi * (p - 0.5));
    return 0.5 * (1.0 + (2.0 / kPi) * std::atan(t));
}

std::array<double, 2> pixel_amplitudes(double value, double p) {
    double f = remap_midpoint(value, p);
    if (f == 0.0) return {1.0, 0.0};
    if (f == 1.0) return {0.0, 1.0};
    return {std::cos(kPi / 2 * f), std::sin(kPi / 2 * f)};
}

QuantumState encode_signal(const Signal& y, double p) {
    if (y.empty()) throw std::invalid_argument("signal must have at least one pixel");
    const int n = static_cast<int>(y.size());
    if (n > 24) throw std::invalid_argument("signal too long to encode densely");
    std::vector<std::array<double, 2>> amp(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) amp[i] = pixel_amplitudes(y[i], p);
    std::vector<Amplitude> state(std::size_t{1} << n);
    for (std::size_t z = 0; z < state.size(); ++z) {
        double a = 1.0;
        for (int q = 0; q < n; ++q) a *= amp[static_cast<std::size_t>(q)][(z >> q) & 1u];
        state[z] = a;
    }
    return QuantumState(n, std::move(state));
}

std::size_t best_binary_image(const Signal& y, double p) {
    std::size_t z = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!(y[i] < p)) z |= (std::size_t{1} << i);
    return z;
}

}  // namespace qcs
