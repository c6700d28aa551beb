#pragma once

#include <stdexcept>
#include <vector>

namespace caperc {

// Intensity vector (lambda_1 >= ... >= lambda_k) of the k color layers,
// together with the total intensity Lambda and the avoided intensities
// lambda_star[i] = Lambda - lambda[i].
struct ColorParams {
    int k = 0;
    std::vector<double> lambdas;      // sorted non-increasing
    double Lambda = 0.0;
    std::vector<double> lambda_star;  // sorted non-decreasing

    // Accepts intensities in any order; sorts non-increasing.
    static ColorParams make(std::vector<double> lams);
};

}  // namespace caperc
