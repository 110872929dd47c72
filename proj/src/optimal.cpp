#include "ifm/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <tuple>
#include <vector>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

constexpr int kRefineIterations = 200;
constexpr double kRefineImprovement = 1e-12;
constexpr double kGoldenTol = 1e-11;

double polar_angle(const PureState& new_basis_state) {
    const BlochVector r = BlochVector::of(new_basis_state);
    return std::atan2(std::hypot(r.rx, r.ry), r.rz);
}

Optimum from_new(Vector amplitudes, double value, double angle, const IfmParams& p) {
    PureState fresh = PureState::normalized(std::move(amplitudes), Basis::New);
    PureState old = fresh.in_basis(Basis::Old, p.theta());
    return Optimum{std::move(fresh), std::move(old), value, angle, false};
}

Optimum from_old(Vector amplitudes, double value, const IfmParams& p) {
    PureState old = PureState::normalized(std::move(amplitudes), Basis::Old);
    PureState fresh = old.in_basis(Basis::New, p.theta());
    const double angle = polar_angle(fresh);
    return Optimum{std::move(fresh), std::move(old), value, angle, false};
}

// Minimizer of a unimodal f on [lo, hi].
template <typename F>
double golden_section(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > kGoldenTol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

Vector sphere_point(double t, double phi) {
    return Vector{std::cos(t / 2.0), std::polar(1.0, phi) * std::sin(t / 2.0)};
}

}  // namespace

Matrix cdagc_matrix(const TransferCoeffs& c) {
    const double f1 = c.weighted_f1;
    const double f2 = c.weighted_f2;
    const double diag = f1 * f1 * (1.0 + c.k1 * c.k1) + f2 * f2;
#ifdef IFM_INJECT_CDAGC_FAULT
    const double x_sign = 1.0;
#else
    const double x_sign = -1.0;
#endif
    return diag * Matrix::identity(2) + (2.0 * f1) * (f2 * sigma_z() + (x_sign * f1 * c.k1) * sigma_x());
}

Optimum min_ploss(const IfmParams& p) {
    const TransferCoeffs c = coeffs(p);
    const auto eig = hermitian_eigen(cdagc_matrix(c));
    const double f1 = c.weighted_f1;
    const double f2 = c.weighted_f2;
    const double top = f1 + std::sqrt(f2 * f2 + f1 * f1 * c.k1 * c.k1);
    const double value = p.q() * (1.0 - top * top);
    Optimum out = from_new(eig.eigenvectors.column(0), value, std::atan2(f1 * c.k1, f2), p);
    const double gap = eig.eigenvalues[0] - eig.eigenvalues[1];
    out.degenerate = gap <= 1e-12 * std::max(1.0, std::abs(eig.eigenvalues[0]));
    return out;
}

ZeroErrorStates zero_error_states(const IfmParams& p, int oracle_grid) {
    const TransferCoeffs c = coeffs(p);
    ZeroErrorStates out;
    if (c.k1 > 1.0) {
        out.min_error = brute_force_min(p, Objective::Error, oracle_grid).value;
        return out;
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - c.k1 * c.k1));
    const double theta2 = std::atan2(c.k1, s);
    const double ch = std::cos(theta2 / 2.0);
    const double sh = std::sin(theta2 / 2.0);
    const double loss_plus = p_loss(BlochVector{c.k1, 0.0, s}, p);
    const double loss_minus = p_loss(BlochVector{c.k1, 0.0, -s}, p);
    out.states = std::array<Optimum, 2>{
        from_new(Vector{ch, sh}, loss_plus, theta2, p),
        from_new(Vector{sh, ch}, loss_minus, theta2, p),
    };
    return out;
}

Optimum best_zero_error(const IfmParams& p) {
    const TransferCoeffs c = coeffs(p);
    if (c.k1 > 1.0) throw NoZeroErrorState("best_zero_error: k1 > 1");
    const double s = std::sqrt(std::max(0.0, 1.0 - c.k1 * c.k1));
    const double theta2 = std::atan2(c.k1, s);
    const double amp = c.weighted_f1 * s + c.weighted_f2;
    return from_new(Vector{std::cos(theta2 / 2.0), std::sin(theta2 / 2.0)}, p.q() * (1.0 - amp * amp), theta2, p);
}

OpaqueSpecials opaque_specials(int n_cycles, double q) {
    const IfmParams p(n_cycles, 0.0, q);
    const double th = p.theta();
    const double c = std::cos(th);
    const double s = std::sin(th);
    return OpaqueSpecials{
        from_old(Vector{c, -s}, q * (1.0 - std::pow(c, 2 * (n_cycles - 1))), p),
        from_old(Vector{1.0, 0.0}, q * (1.0 - std::pow(c, 2 * n_cycles)), p),
        from_old(Vector{s, c}, q, p),
    };
}

Vector entangled_family_vector(double alpha, double beta, const IfmParams& p) {
    if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12) {
        throw Error("entangled_family: alpha^2 + beta^2 must equal 1");
    }
    const auto zero = zero_error_states(p);
    if (!zero.states) throw NoZeroErrorState("entangled_family: k1 > 1");
    const Vector& plus = (*zero.states)[0].state_old.amplitudes();
    const Vector& minus = (*zero.states)[1].state_old.amplitudes();
    Vector v(2 * kIdleDim);
    for (std::size_t i = 0; i < 2; ++i) {
        v[i * kIdleDim + 0] = alpha * plus[i];
        v[i * kIdleDim + 1] = beta * minus[i];
    }
    return v;
}

DiscriminationResult entangled_family_check(double alpha, double beta, const IfmParams& p) {
    return discriminate(BipartitePureState::from_vector(entangled_family_vector(alpha, beta, p)), p);
}

Optimum brute_force_min(const IfmParams& p, Objective objective, int grid) {
    if (grid < 8) throw InvalidSpec("brute_force_min: grid must be >= 8");
    const Matrix t_mat = transfer_present(p);
    const Matrix d_mat = transfer_absent();
    const double q = p.q();
    auto evaluate = [&](double t, double phi) {
        const Vector amp = sphere_point(t, phi);
        const Vector present = t_mat * amp;
        const Vector absent = d_mat * amp;
        const auto fig = pure_figures(squared_norm(present), std::abs(inner(absent, present)), q);
        switch (objective) {
            case Objective::Loss:
                return fig.p_loss;
            case Objective::Error:
                return fig.p_error;
            case Objective::Fail:
                break;
        }
        return fig.p_fail;
    };

    const double t_step = std::numbers::pi / (grid - 1);
    const double phi_step = 2.0 * std::numbers::pi / grid;

    using Candidate = std::tuple<double, int, int>;  // (value, i, j)
    const int workers = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1u, 16u));
    std::vector<Candidate> local(workers, Candidate{INFINITY, grid, grid});
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < grid; i += workers) {
                    for (int j = 0; j < grid; ++j) {
                        const Candidate cand{evaluate(i * t_step, j * phi_step), i, j};
                        if (cand < local[w]) local[w] = cand;
                    }
                }
            });
        }
    }
    const auto [grid_value, bi, bj] = *std::min_element(local.begin(), local.end());

    double t = bi * t_step;
    double phi = bj * phi_step;
    double best = grid_value;
    for (int iter = 0; iter < kRefineIterations; ++iter) {
        const double previous = best;
        const double t_new = golden_section([&](double x) { return evaluate(x, phi); }, std::max(0.0, t - t_step),
                                            std::min(std::numbers::pi, t + t_step));
        if (const double v = evaluate(t_new, phi); v < best) {
            best = v;
            t = t_new;
        }
        const double phi_new =
            golden_section([&](double x) { return evaluate(t, x); }, phi - phi_step, phi + phi_step);
        if (const double v = evaluate(t, phi_new); v < best) {
            best = v;
            phi = phi_new;
        }
        if (previous - best < kRefineImprovement) break;
    }
    phi = std::fmod(phi, 2.0 * std::numbers::pi);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;

    Optimum out = from_old(sphere_point(t, phi), best, p);
    out.angle = t;
    return out;
}

}  // namespace ifm
