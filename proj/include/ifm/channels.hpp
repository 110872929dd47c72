#pragma once

// Kraus-channel model of the interrogation cycle. Single-photon states live in
// the three-dimensional space spanned by |1> (up), |2> (down) and the loss
// state |3>. Bipartite inputs append a two-dimensional idle photon B, so the
// joint index is 2 * i_A + i_B and the joint dimension is 6.
//
// The detector model of the absorbing object uses a vacuum state |v>. Once the
// redundant intermediate mode is eliminated, |v> plays exactly the role of the
// loss state, and the library uses one index for both.

#include <cstddef>
#include <vector>

#include "ifm/smallmat.hpp"

namespace ifm {

inline constexpr std::size_t kPhotonDim = 3;
inline constexpr std::size_t kIdleDim = 2;
inline constexpr std::size_t kBipartiteDim = kPhotonDim * kIdleDim;

// The experiment triple (N, a, q). theta = pi / (2N) is derived.
class IfmParams {
  public:
    // Throws InvalidSpec when n < 1, a outside [0, 1] or q outside [0, 1].
    IfmParams(int n_cycles, double transparency_amp, double prior);

    int n_cycles() const { return n_; }
    double a() const { return a_; }
    double q() const { return q_; }
    double theta() const;

  private:
    int n_;
    double a_;
    double q_;
};

class DensityMatrix {
  public:
    // Validates Hermiticity and unit trace within 1e-12 and a smallest
    // eigenvalue of at least -1e-10. Throws Error otherwise.
    explicit DensityMatrix(Matrix m);
    static DensityMatrix from_pure(std::span<const Complex> amplitudes);
    // Skips validation; used for channel outputs that are already renormalized.
    static DensityMatrix trusted(Matrix m);

    std::size_t dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    double purity() const;

  private:
    struct TrustedTag {};
    DensityMatrix(Matrix m, TrustedTag) : m_(std::move(m)) {}
    Matrix m_;
};

class KrausChannel {
  public:
    // Throws Error when the operators are not dim x dim or violate
    // sum K^dagger K = I beyond 1e-12.
    explicit KrausChannel(std::vector<Matrix> kraus_ops);

    std::size_t dim() const { return dim_; }
    const std::vector<Matrix>& kraus_ops() const { return ops_; }

    // K_i -> K_i (x) I_idle, acting on the first factor of a bipartite space.
    KrausChannel on_first_factor(std::size_t idle_dim) const;

  private:
    std::size_t dim_;
    std::vector<Matrix> ops_;
};

KrausChannel rotation_channel(double theta);
KrausChannel absorption_channel(double a);

// sum_i K_i rho K_i^dagger, followed by Hermitian symmetrization and trace
// rescaling. The renormalization must be a no-op within 1e-12.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

// N cycles of rotation followed by absorption (object present).
DensityMatrix ifm_present(const DensityMatrix& rho, const IfmParams& p);
// N rotations (object absent).
DensityMatrix ifm_absent(const DensityMatrix& rho, const IfmParams& p);

// Four-dimensional detector model in the basis |1>, |2>, |3>, |v>: the beam
// splitter U_b followed by the detector Kraus pair D_0, D_1.
KrausChannel detector_model_channel(double a);
// The detector model with the intermediate mode |3> eliminated: Kraus operators
// restricted to span{|1>, |2>, |v>}, with |v> in the third slot.
KrausChannel detector_model_reduced(double a);

// Index of the vacuum state in the four-dimensional detector basis.
inline constexpr std::size_t kVacuumIndex = 3;

// ||q rho1 - (1 - q) rho2||
double generalized_trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2, double q);

struct ProjectorPair {
    Matrix p0;  // negative eigenspace
    Matrix p1;  // nonnegative eigenspace
};

// Projectors attaining Tr[(P1 - P0) M] = ||M|| for Hermitian M.
ProjectorPair optimal_projectors(const Matrix& m);

// Embeds A-register amplitudes (|1>, |2>, optionally tensored with B) into the
// space that carries the loss state.
Vector embed_photon(std::span<const Complex> amplitudes_12, std::size_t idle_dim = 1);

}  // namespace ifm
