#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ifm/channels.hpp"
#include "ifm/errors.hpp"
#include "ifm/report.hpp"
#include "ifm/sampling.hpp"
#include "ifm/transfer.hpp"
#include "oracles.hpp"

using namespace ifm;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(double x, long double ref) {
    return static_cast<double>(std::abs((x - ref) / ref));
}

// Coefficient error relative to the larger coefficient; at N = 1 the exact
// f2 = k2 = cos(pi/2) vanishes.
double coeff_error(const TransferCoeffs& c, const oracle::Coeffs& ref) {
    const long double scale = std::max(std::abs(ref.f1), std::abs(ref.f2));
    return static_cast<double>(std::max(std::abs(c.f1 - ref.f1), std::abs(c.f2 - ref.f2)) / scale);
}

// Transparency at which 1 - k1^2 is approximately d, near the boundary a*(N).
double transparency_for_gap(int n, double d) {
    const double a_star = boundary_transparency(n);
    const double s = std::sin(kPi / (2.0 * n));
    const double dk1_da = 2.0 * s / ((1.0 - a_star) * (1.0 - a_star));
    return a_star - d / (2.0 * dk1_da);
}

// Largest singular value of a 2x2 matrix.
double spectral_norm(const Matrix& m) { return std::sqrt(hermitian_eigen(m.adjoint() * m).eigenvalues[0]); }

}  // namespace

TEST_CASE("transfer_present special cases") {
    for (int n : {1, 2, 7, 40}) {
        const IfmParams clear(n, 1.0, 0.5);
        CHECK(max_abs_diff(transfer_present(clear), transfer_absent()) < 1e-12);

        const IfmParams opaque(n, 0.0, 0.5);
        const double t = opaque.theta();
        const Matrix expected{{std::pow(std::cos(t), n), -std::sin(t) * std::pow(std::cos(t), n - 1)}, {0.0, 0.0}};
        CHECK(max_abs_diff(transfer_present(opaque), expected) < 1e-12);
    }
}

TEST_CASE("transfer_present matches the long-double product") {
    for (double a : {0.0, 0.25, 0.5, 0.9}) {
        for (int n : {1, 3, 10, 100}) {
            const Matrix t = transfer_present(IfmParams(n, a, 0.5));
            const auto ref = oracle::transfer_product(n, a);
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) CHECK(std::abs(t(i, j) - static_cast<double>(ref[i][j])) < 1e-13);
            }
        }
    }
}

TEST_CASE("transfer_present never increases the norm") {
    Rng rng(71);
    for (int trial = 0; trial < 300; ++trial) {
        const IfmParams p = random_params(rng, 50);
        CHECK(spectral_norm(transfer_present(p)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("transfer_absent") {
    const Matrix d = transfer_absent();
    const Vector out = d * Vector{1.0, 0.0};
    CHECK(out[0] == Complex{});
    CHECK(out[1] == Complex(1.0));
    CHECK(d.adjoint() * d == Matrix::identity(2));
    CHECK(d * d == Complex(-1.0) * Matrix::identity(2));
}

TEST_CASE("basis_change") {
    CHECK(basis_change(0.0) == Matrix::identity(2));
    for (double theta : {0.1, 0.7, kPi / 3}) {
        const Matrix u = basis_change(theta);
        CHECK(max_abs_diff(u * transfer_absent(), transfer_absent() * u) < 1e-15);
        CHECK(max_abs_diff(u.adjoint() * u, Matrix::identity(2)) < 1e-15);
    }
    for (double a : {0.0, 0.3, 0.8}) {
        for (int n : {1, 4, 9}) {
            const IfmParams p(n, a, 0.5);
            const Matrix u = basis_change(p.theta());
            CHECK(max_abs_diff(u * cycle_matrix(p) * u.adjoint(), cycle_matrix_new_basis(p)) < 1e-12);
        }
    }
}

TEST_CASE("PureState basis conversion round trip") {
    Rng rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        const PureState s = random_pure_state(rng);
        const PureState back = s.in_basis(Basis::New, 0.3).in_basis(Basis::Old, 0.3);
        CHECK(back.basis() == Basis::Old);
        CHECK(std::abs(back[0] - s[0]) < 1e-15);
        CHECK(std::abs(back[1] - s[1]) < 1e-15);
    }
    CHECK_THROWS_AS(PureState(Vector{1.0, 1.0}), Error);
    CHECK(PureState::normalized(Vector{3.0, 4.0})[1].real() == doctest::Approx(0.8));
}

TEST_CASE("coeffs examples") {
    const IfmParams opaque(6, 0.0, 0.5);
    const TransferCoeffs c0 = coeffs(opaque);
    CHECK(c0.k1 == doctest::Approx(std::sin(opaque.theta())).epsilon(1e-15));
    CHECK(c0.k2 == doctest::Approx(std::cos(opaque.theta())).epsilon(1e-15));

    const TransferCoeffs c = coeffs(IfmParams(10, 0.5, 0.5));
    CHECK(c.k1 == doctest::Approx(3.0 * std::sin(kPi / 20)).epsilon(1e-15));
    CHECK(c.k2 == doctest::Approx(3.0 * std::cos(kPi / 20)).epsilon(1e-15));
    CHECK(c.regime == Regime::Sub);

    const TransferCoeffs boundary = coeffs(IfmParams(2, 3.0 - 2.0 * std::sqrt(2.0), 0.5));
    CHECK(boundary.k1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(boundary.regime == Regime::Critical);

    CHECK(coeffs(IfmParams(2, 0.5, 0.5)).regime == Regime::Super);
    CHECK(std::string(to_string(Regime::Critical)) == "CRITICAL");
    CHECK_THROWS_AS(coeffs(IfmParams(3, 1.0, 0.5)), DegenerateTransparency);
}

TEST_CASE("coeffs invariants") {
    for (int ai = 0; ai <= 9; ++ai) {
        for (int n = 2; n <= 200; ++n) {
            const IfmParams p(n, 0.1 * ai, 0.5);
            const TransferCoeffs c = coeffs(p);
            CHECK(c.f1 > 0.0);
            CHECK(c.f2 > 0.0);
            CHECK(std::abs(c.k1 / c.k2 - std::tan(p.theta())) < 1e-12 * std::tan(p.theta()));
        }
    }
}

TEST_CASE("single cycle coefficients") {
    for (double a : {0.0, 0.3, 0.9}) {
        const TransferCoeffs c = coeffs(IfmParams(1, a, 0.5));
        CHECK(c.f1 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(c.f2 - c.k2) < 1e-14);
        CHECK(c.f2 >= 0.0);
    }
}

TEST_CASE("coeffs agree with the binomial sum") {
    for (double a : {0.0, 0.2, 0.45, 0.7, 0.9}) {
        for (int n : {1, 2, 3, 5, 8, 13, 21, 34}) {
            const TransferCoeffs c = coeffs(IfmParams(n, a, 0.5));
            CHECK(coeff_error(c, oracle::binomial_coeffs(n, a)) < 1e-10);
        }
    }
}

TEST_CASE("critical band uses the binomial limit") {
    for (int n : {2, 3, 10, 100, 1000}) {
        for (double d : {0.0, 1e-12, -1e-12, 5e-10, -5e-10}) {
            const double a = transparency_for_gap(n, d);
            const TransferCoeffs c = coeffs(IfmParams(n, a, 0.5));
            REQUIRE(c.regime == Regime::Critical);
            // compare weighted values; the raw ones overflow double at N = 1000
            const oracle::Coeffs ref = oracle::binomial_coeffs(n, a);
            const long double weight = std::pow((1.0L - a) / 2.0L, static_cast<long double>(n));
            CHECK(rel_diff(c.weighted_f1, ref.f1 * weight) < 1e-10);
            CHECK(rel_diff(c.weighted_f2, ref.f2 * weight) < 1e-10);
            // the limiting forms N k2^(N-1) and k2^N hold up to O(N^2 |1 - k1^2|)
            const long double k2 = c.k2;
            CHECK(rel_diff(c.weighted_f1, n * std::pow(k2, n - 1) * weight) < 1e-6);
            CHECK(rel_diff(c.weighted_f2, std::pow(k2, n) * weight) < 1e-6);
        }
    }
}

TEST_CASE("coefficients are continuous across the critical band") {
    const int n = 50;
    const TransferCoeffs inside = coeffs(IfmParams(n, boundary_transparency(n), 0.5));
    for (double d : {-2e-9, 2e-9}) {
        const TransferCoeffs outside = coeffs(IfmParams(n, transparency_for_gap(n, d), 0.5));
        CHECK(outside.regime != Regime::Critical);
        CHECK(rel_diff(outside.weighted_f1, inside.weighted_f1) < 1e-6);
        CHECK(rel_diff(outside.weighted_f2, inside.weighted_f2) < 1e-6);
    }
}

TEST_CASE("super regime sums are real") {
    for (int n : {2, 3, 5, 9}) {
        const TransferCoeffs c = coeffs(IfmParams(n, 0.9, 0.5));
        REQUIRE(c.regime == Regime::Super);
        CHECK(std::isfinite(c.f1));
        CHECK(std::isfinite(c.f2));
        CHECK(std::abs(c.sigma1 - c.f1 * std::sqrt(c.k1 * c.k1 - 1.0)) < 1e-12 * std::abs(c.sigma1));
        CHECK(c.sigma2 == c.f2);
    }
}

TEST_CASE("closed_form_C") {
    const IfmParams one(1, 0.3, 0.5);
    const TransferCoeffs c1 = coeffs(one);
    CHECK(c1.f1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c1.f2 == doctest::Approx(c1.k2).epsilon(1e-14));
    CHECK(max_abs_diff(closed_form_C(one), cycle_matrix_new_basis(one)) < 1e-14);

    const IfmParams opaque(4, 0.0, 0.5);
    const Vector one_new = basis_change(opaque.theta()) * Vector{1.0, 0.0};
    const Vector out = closed_form_C(opaque) * one_new;
    CHECK(std::abs(squared_norm(out) - std::pow(std::cos(opaque.theta()), 8)) < 1e-12);

    for (double a : {0.0, 0.5, 0.9}) {
        for (int n : {1, 2, 10, 100, 1000, 10000}) {
            const IfmParams p(n, a, 0.5);
            const Matrix u = basis_change(p.theta());
            const Matrix direct = u * transfer_present(p) * u.adjoint();
            CHECK(max_abs_diff(closed_form_C(p), direct) / max_abs(direct) < 1e-10);
        }
    }
}

TEST_CASE("closed_form_C survives extreme weights") {
    // At a = 0.99 and N = 10^4 the unweighted coefficients overflow; the
    // weighted form must still be finite and match the product.
    const IfmParams p(10000, 0.99, 0.5);
    const TransferCoeffs c = coeffs(p);
    CHECK(std::isfinite(c.weighted_f1));
    CHECK(std::isfinite(c.weighted_f2));
    const Matrix u = basis_change(p.theta());
    const Matrix direct = u * transfer_present(p) * u.adjoint();
    CHECK(max_abs_diff(closed_form_C(p), direct) / max_abs(direct) < 1e-10);
}
