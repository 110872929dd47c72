#pragma once

// Optimal single-photon inputs: the loss minimizer phi_0, the zero-error pair
// phi_+ / phi_-, the opaque-object special states, the entangled zero-error
// family, and a grid-plus-refinement minimizer over the Bloch sphere that
// serves as an independent oracle for all of them.

#include <array>
#include <optional>

#include "ifm/metrics.hpp"

namespace ifm {

struct Optimum {
    PureState state_new;  // new-basis coordinates
    PureState state_old;  // the same state in the |1>, |2> basis
    double value = 0.0;   // objective value (P_loss unless stated otherwise)
    double angle = 0.0;   // Bloch polar angle theta1 or theta2, radians
    bool degenerate = false;
};

// Minimal P_loss: top eigenvector of C^dagger C. angle = theta1.
// Throws DegenerateTransparency.
Optimum min_ploss(const IfmParams& p);

// C^dagger C assembled from the closed-form coefficients (new basis).
Matrix cdagc_matrix(const TransferCoeffs& c);

struct ZeroErrorStates {
    // phi_+ then phi_-; value is each state's P_loss, angle is theta2.
    std::optional<std::array<Optimum, 2>> states;
    // Numerical minimum of P_error over pure states when no zero-error state
    // exists; 0 otherwise.
    double min_error = 0.0;
};

// Two zero-error states exist iff k1 <= 1. Throws DegenerateTransparency.
ZeroErrorStates zero_error_states(const IfmParams& p, int oracle_grid = 48);

// phi_+ and its P_loss. Throws NoZeroErrorState when k1 > 1.
Optimum best_zero_error(const IfmParams& p);

struct OpaqueSpecials {
    Optimum phi_a;  // loss minimizer, cos(theta)|1> - sin(theta)|2>
    Optimum phi_b;  // |1>, zero error
    Optimum phi_c;  // sin(theta)|1> + cos(theta)|2>, zero error, always lost
};

OpaqueSpecials opaque_specials(int n_cycles, double q);

// alpha |phi_+>|0> + beta |phi_->|1> (old-basis photon A). Throws
// NoZeroErrorState when k1 > 1.
Vector entangled_family_vector(double alpha, double beta, const IfmParams& p);
DiscriminationResult entangled_family_check(double alpha, double beta, const IfmParams& p);

enum class Objective { Loss, Error, Fail };

// Minimizes the objective over (cos(t/2), e^{i phi} sin(t/2)), t in [0, pi],
// phi in [0, 2 pi), on a grid x grid lattice followed by golden-section
// coordinate refinement. Requires grid >= 8. The lattice is scanned in
// parallel and reduced by (value, t, phi), so results do not depend on the
// thread count. angle holds the Bloch polar angle t of the old-basis state.
Optimum brute_force_min(const IfmParams& p, Objective objective, int grid);

}  // namespace ifm
