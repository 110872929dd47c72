#include "ifm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

const Vector& old_basis_amplitudes(const PureState& state, const IfmParams& p, Vector& scratch) {
    if (state.dim() != 2) throw DimensionMismatch("single-photon state must have two amplitudes");
    if (state.basis() == Basis::Old) return state.amplitudes();
    scratch = state.in_basis(Basis::Old, p.theta()).amplitudes();
    return scratch;
}

struct Outputs {
    Vector present;  // phi', unnormalized
    Vector absent;   // phi''
};

Outputs propagate(std::span<const Complex> amplitudes, std::size_t idle_dim, const IfmParams& p) {
    Matrix t = transfer_present(p);
    Matrix d = transfer_absent();
    if (idle_dim > 1) {
        t = kron(t, Matrix::identity(idle_dim));
        d = kron(d, Matrix::identity(idle_dim));
    }
    return {t * amplitudes, d * amplitudes};
}

BlochVector reduced_bloch(const BipartitePureState& state, const IfmParams& p) {
    const Vector v = state.vector();
    const Matrix rho_a = partial_trace(outer(v, v), 2, kIdleDim, Subsystem::A);
    const Matrix u = basis_change(p.theta());
    return BlochVector::of(u * rho_a * u.adjoint());
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }

bool BlochVector::is_pure(double tol) const { return std::abs(norm() - 1.0) <= tol; }

BlochVector BlochVector::of(const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) throw DimensionMismatch("BlochVector: expected a 2x2 matrix");
    return BlochVector{2.0 * std::real(rho(0, 1)), -2.0 * std::imag(rho(0, 1)), std::real(rho(0, 0) - rho(1, 1))};
}

BlochVector BlochVector::of(const PureState& new_basis_state) {
    if (new_basis_state.basis() != Basis::New) throw Error("BlochVector: state must be in the new basis");
    return of(outer(new_basis_state.amplitudes(), new_basis_state.amplitudes()));
}

Vector BipartitePureState::vector() const {
    if (phi_b1.size() != kIdleDim || phi_b2.size() != kIdleDim) {
        throw DimensionMismatch("BipartitePureState: idle photon states must be two-dimensional");
    }
    if (alpha < 0.0 || beta < 0.0) throw Error("BipartitePureState: alpha and beta must be nonnegative");
    if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12 || std::abs(squared_norm(phi_b1) - 1.0) > 1e-12 ||
        std::abs(squared_norm(phi_b2) - 1.0) > 1e-12) {
        throw Error("BipartitePureState: not normalized");
    }
    Vector out(2 * kIdleDim);
    for (std::size_t b = 0; b < kIdleDim; ++b) {
        out[b] = alpha * phi_b1[b];
        out[kIdleDim + b] = beta * phi_b2[b];
    }
    return out;
}

BipartitePureState BipartitePureState::from_vector(std::span<const Complex> joint) {
    if (joint.size() != 2 * kIdleDim) throw DimensionMismatch("BipartitePureState: expected four amplitudes");
    BipartitePureState s;
    const std::span<const Complex> up = joint.subspan(0, kIdleDim);
    const std::span<const Complex> down = joint.subspan(kIdleDim, kIdleDim);
    s.alpha = std::sqrt(squared_norm(up));
    s.beta = std::sqrt(squared_norm(down));
    const double total = std::hypot(s.alpha, s.beta);
    s.alpha /= total;
    s.beta /= total;
    // A vanishing branch keeps the default basis state for its idle photon.
    if (s.alpha > 0.0) s.phi_b1 = PureState::normalized(Vector(up.begin(), up.end())).amplitudes();
    if (s.beta > 0.0) s.phi_b2 = PureState::normalized(Vector(down.begin(), down.end())).amplitudes();
    return s;
}

PureFigures pure_figures(double survival, double overlap_abs, double q) {
    const double lambda1 = q * survival + (1.0 - q);
    const double lambda2 = 2.0 * std::sqrt(q * (1.0 - q)) * overlap_abs;
    const double disc = std::sqrt(std::max(lambda1 * lambda1 - lambda2 * lambda2, 0.0));
    // lambda2^2 / (2 (lambda1 + disc)) avoids cancellation near zero error.
    const double denom = lambda1 + disc;
    const double error = denom > 0.0 ? lambda2 * lambda2 / (2.0 * denom) : 0.0;
    const double loss = q * (1.0 - survival);
    return PureFigures{loss, error, loss + error, lambda1, lambda2};
}

double p_loss(const PureState& state, const IfmParams& p) {
    Vector scratch;
    const auto out = propagate(old_basis_amplitudes(state, p, scratch), 1, p);
    return p.q() * (1.0 - squared_norm(out.present));
}

double p_loss(const BipartitePureState& state, const IfmParams& p) {
    const auto out = propagate(state.vector(), kIdleDim, p);
    return p.q() * (1.0 - squared_norm(out.present));
}

double p_error(const PureState& state, const IfmParams& p) {
    Vector scratch;
    const auto out = propagate(old_basis_amplitudes(state, p, scratch), 1, p);
    return pure_figures(squared_norm(out.present), std::abs(inner(out.absent, out.present)), p.q()).p_error;
}

double p_error(const BipartitePureState& state, const IfmParams& p) {
    const auto rho = DensityMatrix::from_pure(embed_photon(state.vector(), kIdleDim));
    return p_error_density(rho, p).p_error;
}

HelstromResult p_error_density(const DensityMatrix& rho, const IfmParams& p, bool with_povm) {
    const DensityMatrix present = ifm_present(rho, p);
    const DensityMatrix absent = ifm_absent(rho, p);
    const Matrix m = p.q() * present.matrix() - (1.0 - p.q()) * absent.matrix();
    HelstromResult out;
    out.p_error = std::max(0.0, 0.5 * (1.0 - trace_norm(m)));
    if (with_povm) out.povm = optimal_projectors(m);
    return out;
}

double pure_trace_norm(double pfac, std::span<const Complex> psi1, std::span<const Complex> psi2) {
    if (psi1.size() != psi2.size()) throw DimensionMismatch("pure_trace_norm: dimensions differ");
    const double overlap = std::norm(inner(psi1, psi2));
    return std::sqrt(std::max((pfac + 1.0) * (pfac + 1.0) - 4.0 * pfac * overlap, 0.0));
}

Complex inner_pp(const BlochVector& r, const IfmParams& p) {
    const TransferCoeffs c = coeffs(p);
    return Complex(c.weighted_f1 * (c.k1 - r.rx), c.weighted_f2 * r.ry);
}

Complex inner_pp(const PureState& state, const IfmParams& p) {
    if (p.a() < kTransparentLimit) {
        const PureState fresh = state.in_basis(Basis::New, p.theta());
        return inner_pp(BlochVector::of(fresh), p);
    }
    Vector scratch;
    const auto out = propagate(old_basis_amplitudes(state, p, scratch), 1, p);
    return inner(out.absent, out.present);
}

Complex inner_pp(const BipartitePureState& state, const IfmParams& p) {
    if (p.a() < kTransparentLimit) return inner_pp(reduced_bloch(state, p), p);
    const auto out = propagate(state.vector(), kIdleDim, p);
    return inner(out.absent, out.present);
}

double p_fail(const PureState& state, const IfmParams& p) {
    Vector scratch;
    const auto out = propagate(old_basis_amplitudes(state, p, scratch), 1, p);
    const auto fig = pure_figures(squared_norm(out.present), std::abs(inner(out.absent, out.present)), p.q());
    return 1.0 - 0.5 * (fig.lambda1 + std::sqrt(std::max(fig.lambda1 * fig.lambda1 - fig.lambda2 * fig.lambda2, 0.0)));
}

double trace_cdagc(const BlochVector& r, const TransferCoeffs& c) {
    const double f1 = c.weighted_f1;
    const double f2 = c.weighted_f2;
    return f1 * f1 * (1.0 + c.k1 * c.k1) + f2 * f2 + 2.0 * f1 * (f2 * r.rz - f1 * c.k1 * r.rx);
}

double p_loss(const BlochVector& r, const IfmParams& p) { return p.q() * (1.0 - trace_cdagc(r, coeffs(p))); }

double p_error(const BlochVector& r, const IfmParams& p) {
    const TransferCoeffs c = coeffs(p);
    return pure_figures(trace_cdagc(r, c), std::abs(inner_pp(r, p)), p.q()).p_error;
}

double p_fail(const BlochVector& r, const IfmParams& p) {
    const TransferCoeffs c = coeffs(p);
    return pure_figures(trace_cdagc(r, c), std::abs(inner_pp(r, p)), p.q()).p_fail;
}

DiscriminationResult discriminate(const PureState& state, const IfmParams& p, bool with_povm) {
    Vector scratch;
    const Vector& amp = old_basis_amplitudes(state, p, scratch);
    const auto out = propagate(amp, 1, p);
    const auto fig = pure_figures(squared_norm(out.present), std::abs(inner(out.absent, out.present)), p.q());
    DiscriminationResult r;
    r.p_loss = fig.p_loss;
    r.p_error = fig.p_error;
    r.p_fail = fig.p_fail;
    r.lambda1 = fig.lambda1;
    r.lambda2 = fig.lambda2;
    r.inner_product = inner_pp(state, p);
    if (with_povm) {
        r.povm = p_error_density(DensityMatrix::from_pure(embed_photon(amp)), p, true).povm;
    }
    return r;
}

DiscriminationResult discriminate(const BipartitePureState& state, const IfmParams& p, bool with_povm) {
    const Vector v = state.vector();
    const auto out = propagate(v, kIdleDim, p);
    const auto fig = pure_figures(squared_norm(out.present), std::abs(inner(out.absent, out.present)), p.q());
    const auto helstrom = p_error_density(DensityMatrix::from_pure(embed_photon(v, kIdleDim)), p, with_povm);
    DiscriminationResult r;
    r.p_loss = fig.p_loss;
    r.p_error = helstrom.p_error;
    r.p_fail = r.p_loss + r.p_error;
    r.lambda1 = fig.lambda1;
    r.lambda2 = fig.lambda2;
    r.inner_product = inner_pp(state, p);
    r.povm = helstrom.povm;
    return r;
}

}  // namespace ifm
