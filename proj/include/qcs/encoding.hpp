#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qcs/statevector.hpp"

namespace qcs {

using Signal = std::vector<double>;

// Monotone remap of [0, 1] onto itself sending the midpoint p to 1/2.
// Endpoints are pinned exactly (f(0) = 0, f(1) = 1) and p = 1/2 is the
// identity. x outside [0, 1] or p outside (0, 1) is rejected.
double remap_midpoint(double x, double p);

// Single-pixel qubit amplitudes (cos(pi/2 f), sin(pi/2 f)) with the
// endpoints pinned to exactly (1, 0) and (0, 1).
std::array<double, 2> pixel_amplitudes(double value, double p);

// Product state over one qubit per pixel; all amplitudes real and >= 0.
QuantumState encode_signal(const Signal& y, double p);

// Basis index whose bits are the pixel-wise threshold of y at p
// (bit i = 0 iff y[i] < p; ties land on 1).
std::size_t best_binary_image(const Signal& y, double p);

}  // namespace qcs
