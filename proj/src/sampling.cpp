#include "ifm/sampling.hpp"

#include <cmath>

namespace ifm {

Vector random_pure_vector(Rng& rng, std::size_t dim) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    double n2 = 0.0;
    while (n2 < 1e-12) {
        for (auto& z : v) z = Complex(gauss(rng), gauss(rng));
        n2 = squared_norm(v);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : v) z *= inv;
    return v;
}

PureState random_pure_state(Rng& rng) { return PureState::normalized(random_pure_vector(rng, 2)); }

DensityMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> weights(rank);
    double total = 0.0;
    for (auto& w : weights) total += (w = unit(rng) + 1e-3);
    Matrix m = Matrix::zeros(dim, dim);
    for (double w : weights) {
        const Vector v = random_pure_vector(rng, dim);
        m += (w / total) * outer(v, v);
    }
    return DensityMatrix(hermitian_part(m));
}

Matrix random_hermitian(Rng& rng, std::size_t dim) {
    std::normal_distribution<double> gauss;
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = gauss(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = Complex(gauss(rng), gauss(rng));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

IfmParams random_params(Rng& rng, int n_max) {
    std::uniform_int_distribution<int> n_dist(1, n_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = n_dist(rng);
    const double a = unit(rng);
    const double q = unit(rng);
    return IfmParams(n, a, q);
}

}  // namespace ifm
