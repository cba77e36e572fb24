#include "qcs/metrics.hpp"

#include <cmath>
#include <limits>

namespace qcs {

namespace {

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double fidelity(const Signal& y, std::size_t z, double p) {
    double f = 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        auto a = pixel_amplitudes(y[i], p);
        double amp = a[(z >> i) & 1u];
        f *= amp * amp;
    }
    return f;
}

double signal_entropy(const Signal& y, double p) {
    double s = 0.0;
    for (double v : y) {
        auto a = pixel_amplitudes(v, p);
        double q0 = a[0] * a[0], q1 = a[1] * a[1];
        s -= xlnx(q0) + xlnx(q1);
    }
    return s;
}

double rll(const Signal& y, std::size_t z, double p) {
    double f = fidelity(y, z, p);
    if (f == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(f) + signal_entropy(y, p);
}

Score score_image(const Signal& y, std::size_t z, double p) {
    return {fidelity(y, z, p), signal_entropy(y, p), rll(y, z, p)};
}

}  // namespace qcs
