#pragma once

#include <stdexcept>
#include <string>

namespace qcs {

// A requested measurement outcome (or weighting) has (near-)zero probability.
class IncompatibleOutcome : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Repeat-until-success training exceeded its attempt budget.
class TrainingFailure : public std::runtime_error {
public:
    TrainingFailure(std::string msg, int attempts, double empirical_rate)
        : std::runtime_error(std::move(msg)), attempts(attempts), empirical_rate(empirical_rate) {}
    int attempts;
    double empirical_rate;
};

// A quantity left the representable range (e.g. log of a vanishing overlap).
class NumericOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sensing matrix has a singular value at or below the rank tolerance.
class RankDeficient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qcs
