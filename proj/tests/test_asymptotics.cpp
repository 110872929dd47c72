#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ifm/asymptotics.hpp"
#include "ifm/errors.hpp"
#include "ifm/optimal.hpp"

using namespace ifm;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("leading term") {
    CHECK(leading_term(IfmParams(50, 0.0, 0.4)) == doctest::Approx(0.4 * kPi * kPi / 200.0).epsilon(1e-15));
    CHECK(leading_term(IfmParams(64, 0.5, 1.0)) == doctest::Approx(3.0 * kPi * kPi / 256.0).epsilon(1e-15));

    const IfmParams p(128, 0.5, 1.0);
    CHECK(ploss_plus_asym(p).leading == ploss_min_asym(p).leading);
    CHECK(ploss_plus_asym(p).order_bound == 3.0);
    CHECK(ploss_min_asym(p).order_bound == 2.0);

    const auto zero = ploss_plus_asym(IfmParams(100, 0.5, 0.0));
    CHECK(zero.leading == 0.0);
    CHECK(zero.exact == 0.0);
    CHECK(zero.residual == 0.0);
}

TEST_CASE("min residual shrinks like 1/N^2") {
    double previous = 0.0;
    for (int n = 64; n <= 4096; n *= 2) {
        const double r = std::abs(ploss_min_asym(IfmParams(n, 0.5, 1.0)).residual);
        if (previous > 0.0) CHECK(previous / r == doctest::Approx(4.0).epsilon(0.1));
        previous = r;
    }
    const double slope = log_log_slope(geometric_ladder(64, 4096),
                                       [](int n) { return ploss_min_asym(IfmParams(n, 0.5, 1.0)).residual; });
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.15));
}

TEST_CASE("phi_plus residual is at least second order") {
    // The residual of the zero-error optimum behind the shared 1/N term falls
    // by about 4x per doubling, so residual * N^2 stays bounded.
    double previous = 0.0;
    for (int n = 64; n <= 4096; n *= 2) {
        const double r = std::abs(ploss_plus_asym(IfmParams(n, 0.5, 1.0)).residual);
        CHECK(r * n * n < 100.0);
        if (previous > 0.0) CHECK(previous / r > 3.5);
        previous = r;
    }
}

TEST_CASE("exact curves stay ordered and vanish") {
    double prev_min = 1.0, prev_plus = 1.0;
    for (int n : geometric_ladder(8, 8192)) {
        const IfmParams p(n, 0.5, 1.0);
        const double lo = ploss_min_asym(p).exact;
        const double hi = ploss_plus_asym(p).exact;
        CHECK(hi >= lo - 1e-15);
        CHECK(lo < prev_min);
        CHECK(hi < prev_plus);
        prev_min = lo;
        prev_plus = hi;
    }
    CHECK(prev_plus < 1e-3);
}

TEST_CASE("angles") {
    for (int n : {100, 1000, 10000}) {
        const IfmParams p(n, 0.0, 0.5);
        const Angles ang = angles(p);
        REQUIRE(ang.theta2);
        CHECK(*ang.theta2 == doctest::Approx(p.theta()).epsilon(1e-12));
    }

    const Angles boundary = angles(IfmParams(2, 3.0 - 2.0 * std::sqrt(2.0), 0.5));
    REQUIRE(boundary.theta2);
    CHECK(*boundary.theta2 == doctest::Approx(kPi / 2).epsilon(1e-6));

    CHECK_FALSE(angles(IfmParams(2, 0.5, 0.5)).theta2);

    double prev1 = 10.0, prev2 = 10.0;
    for (int n : {10, 100, 1000}) {
        const Angles ang = angles(IfmParams(n, 0.5, 0.5));
        REQUIRE(ang.theta2);
        CHECK(ang.theta1 < prev1);
        CHECK(*ang.theta2 < prev2);
        CHECK(ang.theta1 > 0.0);
        prev1 = ang.theta1;
        prev2 = *ang.theta2;
    }

    for (int n : {5, 50}) {
        const IfmParams p(n, 0.2, 0.5);
        CHECK(angles(p).theta1 == doctest::Approx(min_ploss(p).angle));
        CHECK(*angles(p).theta2 == doctest::Approx(best_zero_error(p).angle));
    }
}

TEST_CASE("optimal states approach |1>") {
    for (double a : {0.0, 0.4, 0.8}) {
        for (int n : {100, 400, 2000}) {
            const IfmParams p(n, a, 1.0);
            const double bound = 1.0 - 10.0 / n;
            CHECK(std::norm(min_ploss(p).state_old[0]) >= bound);
            CHECK(std::norm(best_zero_error(p).state_old[0]) >= bound);
        }
    }
}

TEST_CASE("geometric ladder and slope fit") {
    CHECK(geometric_ladder(64, 4096) == std::vector<int>{64, 128, 256, 512, 1024, 2048, 4096});
    CHECK(geometric_ladder(3, 20) == std::vector<int>{3, 6, 12});
    CHECK_THROWS_AS(geometric_ladder(10, 5), InvalidSpec);
    CHECK(log_log_slope({2, 4, 8}, [](int n) { return 7.0 / (n * n * n); }) == doctest::Approx(-3.0));
    CHECK_THROWS_AS(log_log_slope({2}, [](int) { return 1.0; }), InvalidSpec);
}
