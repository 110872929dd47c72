#pragma once

// Pure-state reduction of the interrogation channels. On the photon subspace
// span{|1>, |2>} the object-present process is the (non-unitary) transfer
// matrix [diag(1, a) R_theta]^N and the object-absent process is the constant
// D = R_{pi/2}. The basis change U = exp(-i sigma_y theta / 2) turns the
// single-cycle matrix into ((1 - a)/2)(sigma_z - i k1 sigma_y + k2 I), whose
// N-th power has the closed form
//
//     C = ((1 - a)/2)^N [f1 (sigma_z - i k1 sigma_y) + f2 I].
//
// Closed forms need a < 1; the direct products work for every a in [0, 1].

#include <optional>

#include "ifm/channels.hpp"
#include "ifm/smallmat.hpp"

namespace ifm {

// Coordinates of a two-level state are either in the original |1>, |2> basis
// (Old) or in the rotated basis U|1>, U|2> used by the closed forms (New).
enum class Basis { Old, New };

class PureState {
  public:
    // Throws Error when the norm differs from 1 by more than 1e-12.
    explicit PureState(Vector amplitudes, Basis basis = Basis::Old);
    // Rescales to unit norm. Throws Error on the zero vector.
    static PureState normalized(Vector amplitudes, Basis basis = Basis::Old);

    std::size_t dim() const { return amp_.size(); }
    Basis basis() const { return basis_; }
    const Vector& amplitudes() const { return amp_; }
    Complex operator[](std::size_t i) const { return amp_[i]; }

    // Re-expresses a single-photon (dim 2) state in the target basis.
    PureState in_basis(Basis target, double theta) const;

  private:
    Vector amp_;
    Basis basis_;
};

enum class Regime { Sub, Critical, Super };

const char* to_string(Regime r);

// Coefficients of the closed-form C^N.
//
// sigma1/sigma2 are the odd/even binomial sums and f1/f2 the derived factors,
// all without the ((1 - a)/2)^N prefactor. In the Super regime the odd sum is
// purely imaginary and sigma1 holds its imaginary part. The unweighted values
// overflow for large N; weighted_f1 = ((1 - a)/2)^N f1 and weighted_f2 are
// the quantities every evaluation uses.
struct TransferCoeffs {
    int n = 0;
    double k1 = 0.0;
    double k2 = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double prefactor_base = 0.0;  // (1 - a)/2
    double weighted_f1 = 0.0;
    double weighted_f2 = 0.0;
    Regime regime = Regime::Sub;
};

// Half-width of the Critical band, applied to |1 - k1^2|.
inline constexpr double kCriticalBand = 1e-9;
// a at or above this value is treated as fully transparent.
inline constexpr double kTransparentLimit = 1.0 - 1e-12;

// diag(1, a) R_theta, old basis.
Matrix cycle_matrix(const IfmParams& p);
// U diag(1, a) R_theta U^dagger evaluated from its Pauli expansion.
Matrix cycle_matrix_new_basis(const IfmParams& p);

// [diag(1, a) R_theta]^N as an explicit N-fold product (old basis).
Matrix transfer_present(const IfmParams& p);
// D = [[0, -1], [1, 0]].
Matrix transfer_absent();
// U = exp(-i sigma_y theta / 2).
Matrix basis_change(double theta);

// Throws DegenerateTransparency for a >= 1 - 1e-12.
TransferCoeffs coeffs(const IfmParams& p);
// Closed-form C^N in the new basis. Throws DegenerateTransparency.
Matrix closed_form_C(const IfmParams& p);
Matrix closed_form_C(const TransferCoeffs& c);

}  // namespace ifm
