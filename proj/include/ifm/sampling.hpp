#pragma once

// Seeded random instances for property checks and the verification runner.

#include <cstddef>
#include <random>

#include "ifm/channels.hpp"
#include "ifm/transfer.hpp"

namespace ifm {

using Rng = std::mt19937_64;

// Haar-distributed pure state (normalized complex Gaussian vector).
Vector random_pure_vector(Rng& rng, std::size_t dim);
PureState random_pure_state(Rng& rng);
// Mixture of `rank` random pure states with random weights.
DensityMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank);
// Hermitian matrix with Gaussian entries.
Matrix random_hermitian(Rng& rng, std::size_t dim);
// N uniform in [1, n_max], a uniform in [0, 1), q uniform in [0, 1].
IfmParams random_params(Rng& rng, int n_max);

}  // namespace ifm
