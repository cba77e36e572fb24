#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcs/encoding.hpp"

using namespace qcs;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("midpoint remap hits its anchors") {
    for (double p : {0.1, 0.25, 0.5, 0.62, 0.9}) {
        CHECK(remap_midpoint(0.0, p) == 0.0);
        CHECK(remap_midpoint(1.0, p) == 1.0);
        CHECK(remap_midpoint(p, p) == doctest::Approx(0.5).epsilon(1e-12));
    }
    for (double x : {0.0, 0.125, 0.3, 0.5, 0.77, 1.0})
        CHECK(remap_midpoint(x, 0.5) == x);  // exact identity at the neutral midpoint

    // frozen values from the closed form
    CHECK(remap_midpoint(0.3, 0.2) == doctest::Approx(0.6834299894118887).epsilon(1e-12));
    CHECK(remap_midpoint(0.7, 0.6) == doctest::Approx(0.6215640055172293).epsilon(1e-12));
    CHECK(remap_midpoint(0.25, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(remap_midpoint(0.9, 0.3) == doctest::Approx(0.9181783512937174).epsilon(1e-12));
}

TEST_CASE("midpoint remap is monotone on a fine grid") {
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        double prev = -1.0;
        for (int k = 0; k <= 1000; ++k) {
            const double x = k / 1000.0;
            const double f = remap_midpoint(x, p);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            CHECK(f > prev);  // strictly increasing
            prev = f;
        }
    }
}

TEST_CASE("midpoint remap validates its domain") {
    CHECK_THROWS_AS(remap_midpoint(-0.01, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(remap_midpoint(1.01, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(remap_midpoint(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(remap_midpoint(0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(remap_midpoint(std::nan(""), 0.5), std::invalid_argument);
}

TEST_CASE("pixel amplitudes pin the endpoints exactly") {
    for (double p : {0.2, 0.5, 0.8}) {
        auto lo = pixel_amplitudes(0.0, p);
        CHECK(lo[0] == 1.0);
        CHECK(lo[1] == 0.0);
        auto hi = pixel_amplitudes(1.0, p);
        CHECK(hi[0] == 0.0);
        CHECK(hi[1] == 1.0);
    }
    for (double v : {0.1, 0.37, 0.5, 0.93}) {
        auto a = pixel_amplitudes(v, 0.4);
        CHECK(a[0] * a[0] + a[1] * a[1] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(a[0] >= 0.0);
        CHECK(a[1] >= 0.0);
    }
    auto mid = pixel_amplitudes(0.35, 0.35);
    CHECK(mid[0] == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-12));
    CHECK(mid[1] == doctest::Approx(std::sin(kPi / 4)).epsilon(1e-12));
}

TEST_CASE("encoded signals are non-negative product states") {
    QuantumState st = encode_signal({0.5, 1.0 / 3.0}, 0.5);
    CHECK(st.amplitudes()[0].real() == doctest::Approx(0.6123724356957946).epsilon(1e-12));
    CHECK(st.amplitudes()[1].real() == doctest::Approx(0.6123724356957945).epsilon(1e-12));
    CHECK(st.amplitudes()[2].real() == doctest::Approx(0.35355339059327373).epsilon(1e-12));
    CHECK(st.amplitudes()[3].real() == doctest::Approx(0.3535533905932737).epsilon(1e-12));
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& a : st.amplitudes()) {
        CHECK(a.imag() == 0.0);
        CHECK(a.real() >= 0.0);
    }
}

TEST_CASE("encoding matches the rotation-circuit route") {
    const Signal y{0.12, 0.8, 0.45, 0.66};
    const double p = 0.37;
    QuantumState direct = encode_signal(y, p);
    QuantumState circuit(4);
    for (int q = 0; q < 4; ++q)
        circuit.apply(Gate::rot_y(q, kPi * remap_midpoint(y[static_cast<std::size_t>(q)], p)));
    for (std::size_t z = 0; z < direct.dim(); ++z)
        CHECK(std::abs(direct.amplitudes()[z] - circuit.amplitudes()[z]) < 1e-12);
}

TEST_CASE("saturated pixels produce exact basis factors") {
    QuantumState st = encode_signal({1.0, 0.0, 1.0}, 0.7);
    // only z with bits (1, 0, 1) survives: index 5
    for (std::size_t z = 0; z < st.dim(); ++z) {
        if (z == 5)
            CHECK(st.amplitudes()[z] == Amplitude{1.0, 0.0});
        else
            CHECK(st.amplitudes()[z] == Amplitude{0.0, 0.0});
    }
}

TEST_CASE("best binary image thresholds at the midpoint") {
    CHECK(best_binary_image({0.1, 0.9}, 0.5) == 2);
    CHECK(best_binary_image({0.5}, 0.5) == 1);  // ties land on 1
    CHECK(best_binary_image({0.49999}, 0.5) == 0);
    CHECK(best_binary_image({0.1, 0.2, 0.6, 0.5, 0.2, 0.1}, 0.5) == 12);
    CHECK(best_binary_image({0.4, 0.15, 0.1, 0.2, 0.7, 0.8}, 0.5) == 48);
    CHECK(bitstring(best_binary_image({0.4, 0.15, 0.1, 0.2, 0.7, 0.8}, 0.5), 6) == "000011");
    CHECK(best_binary_image({0.3, 0.3}, 0.2) == 3);  // midpoint moves the threshold
}

TEST_CASE("encode_signal validates its input") {
    CHECK_THROWS_AS(encode_signal({}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(encode_signal({1.2}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(encode_signal({0.5}, 1.0), std::invalid_argument);
}
