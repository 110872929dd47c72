#include "ifm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ifm/channels.hpp"
#include "ifm/metrics.hpp"
#include "ifm/optimal.hpp"
#include "ifm/sampling.hpp"
#include "ifm/transfer.hpp"

namespace ifm {

namespace {

SuiteResult finish(std::string name, double max_error, double tolerance, int instances) {
    return SuiteResult{std::move(name), max_error, tolerance, instances, max_error <= tolerance};
}

double loss_population(const DensityMatrix& rho_out, double q) {
    if (rho_out.dim() == kPhotonDim) return q * std::real(rho_out(2, 2));
    const Matrix reduced = partial_trace(rho_out.matrix(), kPhotonDim, kIdleDim, Subsystem::A);
    return q * std::real(reduced(2, 2));
}

SuiteResult closed_form_vs_product() {
    double worst = 0.0;
    int count = 0;
    for (int ai = 0; ai <= 9; ++ai) {
        for (int n = 1; n <= 200; ++n) {
            const IfmParams p(n, 0.1 * ai, 0.5);
            const Matrix u = basis_change(p.theta());
            const Matrix direct = u * transfer_present(p) * u.adjoint();
            const Matrix closed = closed_form_C(p);
            worst = std::max(worst, max_abs_diff(direct, closed) / max_abs(direct));
            ++count;
        }
    }
    return finish("closed-form-vs-product", worst, 1e-10, count);
}

// The optimum is checked twice: its reported value and the loss its state
// actually produces through the transfer matrices.
SuiteResult eigen_vs_grid() {
    double worst = 0.0;
    int count = 0;
    for (int ai = 0; ai <= 4; ++ai) {
        for (int n = 1; n <= 8; ++n) {
            const IfmParams p(n, 0.2 * ai, 1.0);
            const Optimum closed = min_ploss(p);
            const double oracle = brute_force_min(p, Objective::Loss, 64).value;
            worst = std::max(worst, std::abs(closed.value - oracle));
            worst = std::max(worst, std::abs(p_loss(closed.state_old, p) - oracle));
            ++count;
        }
    }
    return finish("eigen-vs-grid", worst, 1e-6, count);
}

SuiteResult channel_vs_transfer(Rng& rng) {
    double worst = 0.0;
    constexpr int kTrials = 200;
    for (int i = 0; i < kTrials; ++i) {
        const IfmParams p = random_params(rng, 10);
        const PureState state = random_pure_state(rng);
        const auto rho = DensityMatrix::from_pure(embed_photon(state.amplitudes()));
        const double loss_channel = loss_population(ifm_present(rho, p), p.q());
        const double error_channel = p_error_density(rho, p).p_error;
        worst = std::max(worst, std::abs(loss_channel - p_loss(state, p)));
        worst = std::max(worst, std::abs(error_channel - p_error(state, p)));
    }
    return finish("channel-vs-transfer", worst, 1e-10, kTrials);
}

SuiteResult mixture_convexity(Rng& rng) {
    std::uniform_int_distribution<int> rank_dist(2, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    constexpr int kTrials = 200;
    for (int i = 0; i < kTrials; ++i) {
        const IfmParams p = random_params(rng, 6);
        const int rank = rank_dist(rng);
        std::vector<double> weights(rank);
        double total = 0.0;
        for (auto& w : weights) total += (w = unit(rng) + 1e-3);
        Matrix mixed = Matrix::zeros(kPhotonDim, kPhotonDim);
        double avg_loss = 0.0;
        double avg_error = 0.0;
        for (double w : weights) {
            const PureState s = random_pure_state(rng);
            const Vector v = embed_photon(s.amplitudes());
            mixed += (w / total) * outer(v, v);
            avg_loss += w / total * p_loss(s, p);
            avg_error += w / total * p_error(s, p);
        }
        const DensityMatrix rho(hermitian_part(mixed));
        const double loss = loss_population(ifm_present(rho, p), p.q());
        const double error = p_error_density(rho, p).p_error;
        worst = std::max(worst, std::abs(loss - avg_loss));
        worst = std::max(worst, avg_error - error);
    }
    return finish("mixture-convexity", worst, 1e-10, kTrials);
}

SuiteResult marginal_reduction(Rng& rng) {
    double worst = 0.0;
    constexpr int kTrials = 200;
    for (int i = 0; i < kTrials; ++i) {
        const IfmParams p = random_params(rng, 6);
        const Vector joint = random_pure_vector(rng, 2 * kIdleDim);
        const auto rho_ab = DensityMatrix::from_pure(embed_photon(joint, kIdleDim));
        const DensityMatrix rho_a(hermitian_part(partial_trace(rho_ab.matrix(), kPhotonDim, kIdleDim, Subsystem::A)));
        const double loss_ab = loss_population(ifm_present(rho_ab, p), p.q());
        const double loss_a = loss_population(ifm_present(rho_a, p), p.q());
        const double error_ab = p_error_density(rho_ab, p).p_error;
        const double error_a = p_error_density(rho_a, p).p_error;
        worst = std::max(worst, std::abs(loss_ab - loss_a));
        worst = std::max(worst, error_ab - error_a);
    }
    return finish("marginal-reduction", worst, 1e-10, kTrials);
}

SuiteResult zero_error_iff_orthogonal(Rng& rng) {
    int mismatches = 0;
    int count = 0;
    auto check = [&](const PureState& s, const IfmParams& p) {
        const bool zero_error = p_error(s, p) < 1e-10;
        const bool orthogonal = std::abs(inner_pp(s, p)) < 1e-8;
        if (zero_error != orthogonal) ++mismatches;
        ++count;
    };
    for (int i = 0; i < 500; ++i) {
        const IfmParams p = random_params(rng, 10);
        check(random_pure_state(rng), p);
        // Interior priors: at q in {0, 1} every state has zero error.
        if (p.q() > 0.0 && p.q() < 1.0) {
            const auto zero = zero_error_states(p, 16);
            if (zero.states) {
                for (const auto& opt : *zero.states) check(opt.state_old, p);
            }
        }
    }
    return finish("zero-error-iff-orthogonal", mismatches, 0.0, count);
}

SuiteResult coefficient_positivity() {
    int violations = 0;
    int count = 0;
    for (int ai = 0; ai <= 9; ++ai) {
        for (int n = 1; n <= 200; ++n) {
            const TransferCoeffs c = coeffs(IfmParams(n, 0.1 * ai, 0.5));
            if (!(c.f1 > 0.0 && c.f2 > 0.0 && std::isfinite(c.f1) && std::isfinite(c.f2))) ++violations;
            if (!(c.weighted_f1 > 0.0 && c.weighted_f2 > 0.0)) ++violations;
            ++count;
        }
    }
    return finish("coefficient-positivity", violations, 0.0, count);
}

SuiteResult pure_trace_norm_identity(Rng& rng) {
    std::uniform_int_distribution<int> dim_dist(2, 4);
    std::uniform_real_distribution<double> pfac_dist(1e-3, 5.0);
    double worst = 0.0;
    constexpr int kTrials = 1000;
    for (int i = 0; i < kTrials; ++i) {
        const auto dim = static_cast<std::size_t>(dim_dist(rng));
        const double pfac = pfac_dist(rng);
        const Vector psi1 = random_pure_vector(rng, dim);
        const Vector psi2 = random_pure_vector(rng, dim);
        const double eigen = trace_norm(pfac * outer(psi1, psi1) - outer(psi2, psi2));
        worst = std::max(worst, std::abs(pure_trace_norm(pfac, psi1, psi2) - eigen));
    }
    return finish("pure-trace-norm", worst, 1e-10, kTrials);
}

SuiteResult detector_reduction(Rng& rng) {
    double worst = 0.0;
    int count = 0;
    for (double a : {0.0, 0.3, 0.7, 1.0}) {
        const auto reduced = detector_model_reduced(a).kraus_ops();
        const auto effective = absorption_channel(a).kraus_ops();
        for (std::size_t k = 0; k < 2; ++k) worst = std::max(worst, max_abs_diff(reduced[k], effective[k]));
        const KrausChannel full = detector_model_channel(a);
        for (int trial = 0; trial < 20; ++trial) {
            const DensityMatrix rho = random_density(rng, kPhotonDim, 2);
            // |1>, |2>, |v> occupy slots 0, 1, 3 of the detector basis.
            constexpr std::size_t slot[] = {0, 1, kVacuumIndex};
            Matrix wide = Matrix::zeros(4, 4);
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) wide(slot[i], slot[j]) = rho(i, j);
            }
            const DensityMatrix out_full = apply_channel(full, DensityMatrix::trusted(wide));
            const DensityMatrix out_eff = apply_channel(absorption_channel(a), rho);
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    const bool kept = i != 2 && j != 2;
                    const Complex expected =
                        kept ? out_eff(i == kVacuumIndex ? 2 : i, j == kVacuumIndex ? 2 : j) : Complex{};
                    worst = std::max(worst, std::abs(out_full(i, j) - expected));
                }
            }
            ++count;
        }
    }
    return finish("detector-reduction", worst, 1e-12, count);
}

SuiteResult contractivity(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    constexpr int kTrials = 200;
    for (int i = 0; i < kTrials; ++i) {
        const double q = unit(rng);
        const DensityMatrix rho1 = random_density(rng, kBipartiteDim, 3);
        const DensityMatrix rho2 = random_density(rng, kBipartiteDim, 3);
        const DensityMatrix red1 = DensityMatrix::trusted(partial_trace(rho1.matrix(), kPhotonDim, kIdleDim, Subsystem::A));
        const DensityMatrix red2 = DensityMatrix::trusted(partial_trace(rho2.matrix(), kPhotonDim, kIdleDim, Subsystem::A));
        worst = std::max(worst, generalized_trace_distance(red1, red2, q) - generalized_trace_distance(rho1, rho2, q));
    }
    return finish("contractivity", worst, 1e-12, kTrials);
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string VerifyReport::text() const {
    std::string out;
    char line[256];
    int failed = 0;
    for (const auto& s : suites) {
        std::snprintf(line, sizeof line, "%-26s instances=%-5d max_error=%.6e tolerance=%.1e %s\n", s.name.c_str(),
                      s.instances, s.max_error, s.tolerance, s.passed ? "PASS" : "FAIL");
        out += line;
        if (!s.passed) ++failed;
    }
    if (failed == 0) {
        out += "all suites passed\n";
    } else {
        std::snprintf(line, sizeof line, "%d suite(s) failed\n", failed);
        out += line;
    }
    return out;
}

VerifyReport run_verification(std::uint64_t seed) {
    Rng rng(seed);
    VerifyReport report;
    report.suites.push_back(closed_form_vs_product());
    report.suites.push_back(eigen_vs_grid());
    report.suites.push_back(channel_vs_transfer(rng));
    report.suites.push_back(mixture_convexity(rng));
    report.suites.push_back(marginal_reduction(rng));
    report.suites.push_back(zero_error_iff_orthogonal(rng));
    report.suites.push_back(coefficient_positivity());
    report.suites.push_back(pure_trace_norm_identity(rng));
    report.suites.push_back(detector_reduction(rng));
    report.suites.push_back(contractivity(rng));
    return report;
}

}  // namespace ifm
