#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "diew/scenario.hpp"

namespace diew {

// One round of shared randomness for the biseparable model: a party left
// alone with the hidden unit vector lambda, a two-qubit pure state
// cos(a/2)|00> + sin(a/2)e^{-ib}|11> for the other two, and three
// depolarisation signs.
struct HiddenState {
    int alone = 2;          // 0=A, 1=B, 2=C
    double alpha = 0.0;     // polar angle of lambda
    double beta = 0.0;      // azimuth of lambda
    std::array<int, 3> signs = {1, 1, 1};  // s_AB, s_AC, s_BC

    std::array<double, 3> lambda() const;  // unit vector
};

// One Bloch measurement direction per party.
struct MeasurementDirections {
    std::array<double, 3> theta = {0, 0, 0};
    std::array<double, 3> phi = {0, 0, 0};

    std::array<double, 3> vec(int party) const;
};

inline constexpr double kSignPlusProbability = 0.9330127018922193;  // (2+sqrt(3))/4

HiddenState sample_hidden(std::uint64_t seed);
HiddenState sample_hidden(std::mt19937_64& eng);

// outputs (A, B, C) in {+-1}
std::array<int, 3> simulate_round(const HiddenState& h, const MeasurementDirections& dirs,
                                  std::mt19937_64& eng);

// closed-form model correlators, assembled as a one-setting-per-party table
CorrelatorSet analytic_correlators(const MeasurementDirections& dirs);

struct MonteCarloResult {
    CorrelatorSet estimate;
    CorrelatorSet std_error;
    std::uint64_t n_rounds = 0;
    std::uint64_t seed = 0;
};

MonteCarloResult monte_carlo_correlators(const MeasurementDirections& dirs,
                                         std::uint64_t n_rounds, std::uint64_t seed,
                                         int n_threads = 1);

}  // namespace diew
