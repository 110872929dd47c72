#pragma once

// Large-N behaviour of the optimal loss probabilities. Both the unconstrained
// minimum and the zero-error optimum phi_+ share the leading term
// q (1 + a)/(1 - a) pi^2 / (4N).

#include <functional>
#include <optional>
#include <vector>

#include "ifm/channels.hpp"

namespace ifm {

struct AsymptoticEstimate {
    double leading = 0.0;
    double exact = 0.0;
    double residual = 0.0;     // exact - leading
    double order_bound = 0.0;  // claimed exponent p in residual = O(1/N^p)
};

double leading_term(const IfmParams& p);

// Zero-error optimum phi_+; claimed remainder O(1/N^3).
// Throws NoZeroErrorState when k1 > 1.
AsymptoticEstimate ploss_plus_asym(const IfmParams& p);

// Unconstrained minimum; claimed remainder O(1/N^2).
// Throws DegenerateTransparency.
AsymptoticEstimate ploss_min_asym(const IfmParams& p);

struct Angles {
    double theta1 = 0.0;
    std::optional<double> theta2;  // absent when k1 > 1
};

Angles angles(const IfmParams& p);

// N = n_min, 2 n_min, 4 n_min, ... <= n_max.
std::vector<int> geometric_ladder(int n_min, int n_max);

// Least-squares slope of log|residual(N)| against log N over the ladder.
// A remainder of order 1/N^p gives a slope close to -p.
double log_log_slope(const std::vector<int>& ladder, const std::function<double(int)>& residual);

}  // namespace ifm
