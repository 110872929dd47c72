#pragma once

// Figures of merit for one input state: the loss probability P_loss, the
// minimum discrimination error P_error (Helstrom) and their sum P_fail.
//
// Pure single-photon states are evaluated from the transfer matrices; the
// Bloch-vector forms evaluate the same quantities from the closed-form
// coefficients (a < 1 only); density-matrix inputs go through the full channel
// simulation and a trace norm.

#include <optional>

#include "ifm/channels.hpp"
#include "ifm/transfer.hpp"

namespace ifm {

// rho = (I + r . sigma) / 2 for a state expressed in the new basis.
struct BlochVector {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 0.0;

    double norm() const;
    bool is_pure(double tol = 1e-10) const;

    static BlochVector of(const Matrix& rho);
    static BlochVector of(const PureState& new_basis_state);
};

// alpha |1>|phi1> + beta |2>|phi2> with alpha, beta >= 0; every bipartite pure
// state with a two-dimensional idle photon has this form.
struct BipartitePureState {
    double alpha = 1.0;
    double beta = 0.0;
    Vector phi_b1{1.0, 0.0};
    Vector phi_b2{0.0, 1.0};

    // Joint amplitudes, index 2 * i_A + i_B. Throws Error unless normalized.
    Vector vector() const;
    static BipartitePureState from_vector(std::span<const Complex> joint);
};

struct HelstromResult {
    double p_error = 0.0;
    std::optional<ProjectorPair> povm;  // p1: declare "present"
};

struct DiscriminationResult {
    double p_loss = 0.0;
    double p_error = 0.0;
    double p_fail = 0.0;
    Complex inner_product{};  // <phi''|phi'>
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::optional<ProjectorPair> povm;
};

// P_loss = q (1 - <phi'|phi'>), valid for every a in [0, 1].
double p_loss(const PureState& state, const IfmParams& p);
double p_loss(const BipartitePureState& state, const IfmParams& p);

// Pure closed form: (lambda1 - sqrt(lambda1^2 - lambda2^2)) / 2.
double p_error(const PureState& state, const IfmParams& p);
// Six-dimensional Helstrom evaluation.
double p_error(const BipartitePureState& state, const IfmParams& p);

// (1 - ||q rho' - (1 - q) rho''||) / 2 from the channel simulation.
HelstromResult p_error_density(const DensityMatrix& rho, const IfmParams& p, bool with_povm = false);

// ||p |psi1><psi1| - |psi2><psi2||| = sqrt((p + 1)^2 - 4 p |<psi1|psi2>|^2).
double pure_trace_norm(double pfac, std::span<const Complex> psi1, std::span<const Complex> psi2);

// <phi''|phi'>. Uses the coefficient closed form for a < 1 and the transfer
// matrices at a = 1.
Complex inner_pp(const PureState& state, const IfmParams& p);
Complex inner_pp(const BipartitePureState& state, const IfmParams& p);
// ((1 - a)/2)^N (f1 k1 - f1 rx + i f2 ry).
Complex inner_pp(const BlochVector& r, const IfmParams& p);

// 1 - (lambda1 + sqrt(lambda1^2 - lambda2^2)) / 2.
double p_fail(const PureState& state, const IfmParams& p);

// Closed-form evaluations on the reduced state of photon A (new basis).
double trace_cdagc(const BlochVector& r, const TransferCoeffs& c);
double p_loss(const BlochVector& r, const IfmParams& p);
double p_error(const BlochVector& r, const IfmParams& p);
double p_fail(const BlochVector& r, const IfmParams& p);

// Everything at once for a single-photon pure state. The POVM is the optimal
// projector pair on the three-dimensional output space.
DiscriminationResult discriminate(const PureState& state, const IfmParams& p, bool with_povm = false);
DiscriminationResult discriminate(const BipartitePureState& state, const IfmParams& p, bool with_povm = false);

// Loss, error and fail from the survival norm <phi'|phi'> and |<phi''|phi'>|.
struct PureFigures {
    double p_loss;
    double p_error;
    double p_fail;
    double lambda1;
    double lambda2;
};
PureFigures pure_figures(double survival, double overlap_abs, double q);

}  // namespace ifm
