#include <doctest.h>

#include <cmath>

#include "ifm/channels.hpp"
#include "ifm/errors.hpp"
#include "ifm/sampling.hpp"
#include "ifm/smallmat.hpp"
#include "oracles.hpp"

using namespace ifm;

namespace {

Matrix reconstruct(const HermitianEigenResult& r) {
    const Matrix& v = r.eigenvectors;
    return v * Matrix::diagonal(r.eigenvalues) * v.adjoint();
}

}  // namespace

TEST_CASE("matrix construction and adjoint") {
    const Matrix m{{1.0, Complex(2, 1)}, {Complex(0, -3), 4.0}};
    CHECK(m.rows() == 2);
    CHECK(m.entries().size() == 4);
    CHECK(m.adjoint()(0, 1) == Complex(0, 3));
    CHECK(m.adjoint().adjoint() == m);
    CHECK_THROWS_AS(Matrix(2, 2, std::vector<Complex>(3)), DimensionMismatch);
    CHECK_THROWS_AS(Matrix::identity(2) * Matrix::identity(3), DimensionMismatch);
}

TEST_CASE("hermitian_eigen on trivial inputs") {
    const auto id = hermitian_eigen(Matrix::identity(2));
    CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(id.eigenvalues[1] == doctest::Approx(1.0));

    const auto z = hermitian_eigen(sigma_z());
    CHECK(z.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(z.eigenvalues[1] == doctest::Approx(-1.0));
    CHECK(std::abs(z.eigenvectors(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(z.eigenvectors(1, 1) - 1.0) < 1e-14);

    CHECK_THROWS_AS(hermitian_eigen(Matrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitian);
}

TEST_CASE("hermitian_eigen reconstructs random 6x6 matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix h = random_hermitian(rng, 6);
        const auto r = hermitian_eigen(h);
        CHECK(max_abs_diff(reconstruct(r), h) < 1e-10);
        CHECK(max_abs_diff(r.eigenvectors.adjoint() * r.eigenvectors, Matrix::identity(6)) < 1e-10);
        CHECK(std::is_sorted(r.eigenvalues.rbegin(), r.eigenvalues.rend()));
        // first significant entry of each eigenvector is real and positive
        for (std::size_t j = 0; j < 6; ++j) {
            for (std::size_t i = 0; i < 6; ++i) {
                const Complex z = r.eigenvectors(i, j);
                if (std::abs(z) > 1e-10) {
                    CHECK(z.real() > 0.0);
                    CHECK(std::abs(z.imag()) < 1e-12);
                    break;
                }
            }
        }
    }
}

TEST_CASE("hermitian_eigen is deterministic") {
    Rng rng(3);
    const Matrix h = random_hermitian(rng, 5);
    const auto r1 = hermitian_eigen(h);
    const auto r2 = hermitian_eigen(h);
    CHECK(r1.eigenvalues == r2.eigenvalues);
    CHECK(r1.eigenvectors == r2.eigenvectors);
}

TEST_CASE("hermitian_eigen agrees with the cubic formula") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix h = random_hermitian(rng, 3);
        const auto ev = oracle::eigenvalues3(h);
        const auto r = hermitian_eigen(h);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(r.eigenvalues[i] - ev[i]) < 1e-10);
    }
}

TEST_CASE("trace_norm") {
    CHECK(trace_norm(Matrix::zeros(3, 3)) == 0.0);
    CHECK(trace_norm(sigma_x()) == doctest::Approx(2.0).epsilon(1e-14));

    Rng rng(5);
    std::uniform_real_distribution<double> pdist(0.01, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double pfac = pdist(rng);
        const Vector psi1 = random_pure_vector(rng, 3);
        const Vector psi2 = random_pure_vector(rng, 3);
        const Matrix m = pfac * outer(psi1, psi1) - outer(psi2, psi2);
        const double overlap = std::norm(inner(psi1, psi2));
        const double expected = std::sqrt((pfac + 1) * (pfac + 1) - 4 * pfac * overlap);
        CHECK(std::abs(trace_norm(m) - expected) < 1e-10);
        CHECK(std::abs(trace_norm(m) - oracle::trace_norm3(m)) < 1e-10);
    }
}

TEST_CASE("trace_norm of non-Hermitian input is the sum of singular values") {
    // singular values of [[3, 0], [4, 0]] are 5 and 0
    CHECK(trace_norm(Matrix{{3.0, 0.0}, {4.0, 0.0}}) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("trace_norm dominates the trace for random Hermitian matrices") {
    Rng rng(23);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const Matrix h = random_hermitian(rng, static_cast<std::size_t>(dim(rng)));
        const double tn = trace_norm(h);
        CHECK(tn >= std::abs(trace(h)) - 1e-12);
        double sum = 0.0;
        for (double e : hermitian_eigen(h).eigenvalues) sum += std::abs(e);
        CHECK(std::abs(tn - sum) < 1e-10);
    }
}

TEST_CASE("kron") {
    CHECK(kron(Matrix::identity(2), Matrix::identity(2)) == Matrix::identity(4));
    const Matrix zi = kron(sigma_z(), Matrix::identity(2));
    const double diag[] = {1, 1, -1, -1};
    CHECK(max_abs_diff(zi, Matrix::diagonal(diag)) == 0.0);

    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = random_hermitian(rng, 3);
        const Matrix b = random_hermitian(rng, 2);
        const Matrix c = random_hermitian(rng, 2);
        const Vector x = random_pure_vector(rng, 3);
        const Vector y = random_pure_vector(rng, 2);
        const Vector lhs = kron(a, b) * kron(x, y);
        const Vector rhs = kron(a * x, b * y);
        for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
        CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
    }
}

TEST_CASE("partial_trace") {
    Rng rng(31);
    const DensityMatrix rho_a = random_density(rng, 3, 3);
    const DensityMatrix rho_b = random_density(rng, 2, 2);
    const Matrix joint = kron(rho_a.matrix(), rho_b.matrix());
    CHECK(max_abs_diff(partial_trace(joint, 3, 2, Subsystem::A), rho_a.matrix()) < 1e-14);
    CHECK(max_abs_diff(partial_trace(joint, 3, 2, Subsystem::B), rho_b.matrix()) < 1e-14);

    const double r = 1.0 / std::sqrt(2.0);
    const Vector bell{r, 0.0, 0.0, r};
    CHECK(max_abs_diff(partial_trace(outer(bell, bell), 2, 2, Subsystem::A), 0.5 * Matrix::identity(2)) < 1e-15);

    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = random_density(rng, 6, 4);
        CHECK(std::abs(trace(partial_trace(rho.matrix(), 3, 2, Subsystem::A)) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(partial_trace(Matrix::identity(5), 3, 2, Subsystem::A), DimensionMismatch);
}

TEST_CASE("partial_trace commutes with channels on the kept factor") {
    Rng rng(37);
    const KrausChannel ch = absorption_channel(0.4);
    const KrausChannel lifted = ch.on_first_factor(kIdleDim);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = random_density(rng, 6, 3);
        const Matrix lhs = partial_trace(apply_channel(lifted, rho).matrix(), 3, 2, Subsystem::A);
        const DensityMatrix reduced(hermitian_part(partial_trace(rho.matrix(), 3, 2, Subsystem::A)));
        CHECK(max_abs_diff(lhs, apply_channel(ch, reduced).matrix()) < 1e-12);
    }
}
