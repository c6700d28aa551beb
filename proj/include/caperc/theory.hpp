#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caperc/color_params.hpp"

namespace caperc::theory {

enum class Regime {
    Supercritical,      // lambda_1^* > 1
    Intermediate,       // lambda_k^* > 1 >= lambda_1^*, not strict
    IntermediateStrict, // lambda_k^* > 1 > lambda_{k-1}^*
    CriticalTop,        // lambda_1^* = 1
    CriticalBottom,     // lambda_k^* = 1 > lambda_{k-1}^*
    Subcritical         // lambda_k^* < 1
};

std::string regime_name(Regime r);

// Exact comparisons against 1; the caller supplies exact-intent values.
Regime classify_regime(const ColorParams& params);

// I_lambda = lambda - 1 - log(lambda). Zero only at lambda = 1.
double rate_I(double lambda);

// Binomial rate J_q(x) = x log(x/q) + (1-x) log((1-x)/(1-q)) on [q, 1],
// continuously extended with J_q(1) = log(1/q).
double entropy_J(double q, double x);

struct RhoResult {
    double value = 0.0;
    double argmin = 0.0;
};

// rho(q, lambda) = min over [q, 1] of (I_lambda + J_q(x)) / x.
// Dense 1e-3 grid, then golden-section refinement to 1e-10.
RhoResult rho(double q, double lambda);

// a(q, lambda) = 1 / rho(q, lambda).
double a_of(double q, double lambda);

// Survival probability of a Po(lambda) branching process: the positive
// root of t = 1 - exp(-lambda t) for lambda > 1, else 0.
double mu(double lambda);

struct A1Result {
    double a1 = 0.0;
    // x[S] for every S subset of [k] (bitmask key): probability that on
    // the colored branching tree the root's component avoiding color i
    // is finite for every i in S. x[0] = 1.
    std::map<std::uint32_t, double> subset_fixed_points;
};

// Minimal solution of x_S = exp(sum_j lambda_j (x_{S \ {j}} - 1)) with
// the convention S \ {j} = S for j outside S, iterated upward from 0;
// a1 recovered by inclusion-exclusion over S.
A1Result a1(const ColorParams& params);

// a2 = a(mu(lambda_k^*), lambda_k); requires the strict intermediate
// regime (lambda_k^* > 1 > lambda_{k-1}^*).
double a2(const ColorParams& params);

// beta_k = (k-1)!/2 * prod lambda_i / (1 - lambda_i); for k = 2 the
// repeated-edge rate gamma_2 is added. Requires every lambda_i < 1.
double beta_top(const ColorParams& params);

// gamma_2 = (1/2) sum_{i<j} lambda_i lambda_j; gamma_m = Lambda^m / (2m)
// for m >= 3.
double gamma_m(const ColorParams& params, int m);

}  // namespace caperc::theory
