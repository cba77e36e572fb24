#pragma once

#include <cstddef>

#include "qcs/encoding.hpp"

namespace qcs {

// Squared overlap between the encoded signal and the basis image z:
// product over pixels of cos^2 / sin^2 of the remapped angle. Saturated
// pixels pin the factor to exactly 0 or 1.
double fidelity(const Signal& y, std::size_t z, double p);

// Shannon entropy (nats) of the encoded signal's image distribution; for a
// product encoding this is the sum of per-pixel binary entropies.
double signal_entropy(const Signal& y, double p);

// Relative log-likelihood of image z under signal y: ln(fidelity) + entropy.
// Zero fidelity yields -infinity (a valid, maximally bad score).
double rll(const Signal& y, std::size_t z, double p);

struct Score {
    double fidelity;
    double entropy;
    double rll;
};

Score score_image(const Signal& y, std::size_t z, double p);

}  // namespace qcs
