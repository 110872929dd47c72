#include "ifm/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

constexpr double kCompletenessTol = 1e-12;
constexpr double kRenormTol = 1e-12;

DensityMatrix renormalize(Matrix m) {
    Matrix h = hermitian_part(m);
    const double asym = max_abs_diff(h, m);
    const double tr = std::real(trace(h));
    if (asym > kRenormTol || std::abs(tr - 1.0) > kRenormTol) {
        throw Error("apply_channel: renormalization drift " + std::to_string(std::max(asym, std::abs(tr - 1.0))));
    }
    h *= 1.0 / tr;
    return DensityMatrix::trusted(std::move(h));
}

void require_ifm_dim(const DensityMatrix& rho) {
    if (rho.dim() != kPhotonDim && rho.dim() != kBipartiteDim) {
        throw DimensionMismatch("ifm channel: input must be 3- or 6-dimensional");
    }
}

KrausChannel for_input(const KrausChannel& ch, const DensityMatrix& rho) {
    return rho.dim() == ch.dim() ? ch : ch.on_first_factor(rho.dim() / ch.dim());
}

}  // namespace

IfmParams::IfmParams(int n_cycles, double transparency_amp, double prior)
    : n_(n_cycles), a_(transparency_amp), q_(prior) {
    if (n_ < 1) throw InvalidSpec("n_cycles must be >= 1");
    if (!(a_ >= 0.0 && a_ <= 1.0)) throw InvalidSpec("transparency amplitude a must lie in [0, 1]");
    if (!(q_ >= 0.0 && q_ <= 1.0)) throw InvalidSpec("prior q must lie in [0, 1]");
}

double IfmParams::theta() const { return std::numbers::pi / (2.0 * n_); }

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (!m_.is_square()) throw DimensionMismatch("DensityMatrix: not square");
    if (!is_hermitian(m_, 1e-12)) throw Error("DensityMatrix: not Hermitian");
    if (std::abs(trace(m_) - 1.0) > 1e-12) throw Error("DensityMatrix: trace differs from 1");
    const auto eig = hermitian_eigen(m_, 1e-12);
    if (eig.eigenvalues.back() < -1e-10) throw Error("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> amplitudes) {
    if (std::abs(squared_norm(amplitudes) - 1.0) > 1e-12) {
        throw Error("DensityMatrix::from_pure: state is not normalized");
    }
    return DensityMatrix(outer(amplitudes, amplitudes), TrustedTag{});
}

DensityMatrix DensityMatrix::trusted(Matrix m) { return DensityMatrix(std::move(m), TrustedTag{}); }

double DensityMatrix::purity() const { return std::real(trace(m_ * m_)); }

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops) : ops_(std::move(kraus_ops)) {
    if (ops_.empty()) throw Error("KrausChannel: no Kraus operators");
    dim_ = ops_.front().rows();
    Matrix completeness = Matrix::zeros(dim_, dim_);
    for (const auto& k : ops_) {
        if (k.rows() != dim_ || k.cols() != dim_) throw DimensionMismatch("KrausChannel: operator shape");
        completeness += k.adjoint() * k;
    }
    if (max_abs_diff(completeness, Matrix::identity(dim_)) > kCompletenessTol) {
        throw Error("KrausChannel: completeness relation violated");
    }
}

KrausChannel KrausChannel::on_first_factor(std::size_t idle_dim) const {
    std::vector<Matrix> lifted;
    lifted.reserve(ops_.size());
    const Matrix id = Matrix::identity(idle_dim);
    for (const auto& k : ops_) lifted.push_back(kron(k, id));
    return KrausChannel(std::move(lifted));
}

KrausChannel rotation_channel(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return KrausChannel({Matrix{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}});
}

KrausChannel absorption_channel(double a) {
    Matrix a0{{1.0, 0.0, 0.0}, {0.0, a, 0.0}, {0.0, 0.0, 1.0}};
    Matrix a1 = Matrix::zeros(3, 3);
    a1(2, 1) = std::sqrt(std::max(0.0, 1.0 - a * a));
    return KrausChannel({std::move(a0), std::move(a1)});
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim() != rho.dim()) throw DimensionMismatch("apply_channel: channel and state dimensions differ");
    Matrix out = Matrix::zeros(rho.dim(), rho.dim());
    for (const auto& k : ch.kraus_ops()) out += k * rho.matrix() * k.adjoint();
    return renormalize(std::move(out));
}

DensityMatrix ifm_present(const DensityMatrix& rho, const IfmParams& p) {
    require_ifm_dim(rho);
    const KrausChannel rot = for_input(rotation_channel(p.theta()), rho);
    const KrausChannel absorb = for_input(absorption_channel(p.a()), rho);
    DensityMatrix state = rho;
    for (int cycle = 0; cycle < p.n_cycles(); ++cycle) {
        state = apply_channel(absorb, apply_channel(rot, state));
    }
    return state;
}

DensityMatrix ifm_absent(const DensityMatrix& rho, const IfmParams& p) {
    require_ifm_dim(rho);
    const KrausChannel rot = for_input(rotation_channel(p.theta()), rho);
    DensityMatrix state = rho;
    for (int cycle = 0; cycle < p.n_cycles(); ++cycle) state = apply_channel(rot, state);
    return state;
}

KrausChannel detector_model_channel(double a) {
    const double r = std::sqrt(std::max(0.0, 1.0 - a * a));
    const Matrix beam_splitter{
        {1.0, 0.0, 0.0, 0.0},
        {0.0, a, -r, 0.0},
        {0.0, r, a, 0.0},
        {0.0, 0.0, 0.0, 1.0},
    };
    Matrix d0 = Matrix::zeros(4, 4);
    d0(0, 0) = 1.0;
    d0(1, 1) = 1.0;
    d0(kVacuumIndex, kVacuumIndex) = 1.0;
    Matrix d1 = Matrix::zeros(4, 4);
    d1(kVacuumIndex, 2) = 1.0;
    return KrausChannel({d0 * beam_splitter, d1 * beam_splitter});
}

KrausChannel detector_model_reduced(double a) {
    constexpr std::size_t kept[] = {0, 1, kVacuumIndex};
    const KrausChannel full = detector_model_channel(a);
    std::vector<Matrix> reduced;
    for (const auto& c : full.kraus_ops()) {
        Matrix r(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) r(i, j) = c(kept[i], kept[j]);
        }
        reduced.push_back(std::move(r));
    }
    return KrausChannel(std::move(reduced));
}

double generalized_trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2, double q) {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("generalized_trace_distance: dimensions differ");
    return trace_norm(q * rho1.matrix() - (1.0 - q) * rho2.matrix());
}

ProjectorPair optimal_projectors(const Matrix& m) {
    const auto eig = hermitian_eigen(m, 1e-10 * std::max(max_abs(m), 1.0));
    const std::size_t n = m.rows();
    Matrix p1 = Matrix::zeros(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        if (eig.eigenvalues[col] < 0.0) continue;
        const Vector v = eig.eigenvectors.column(col);
        p1 += outer(v, v);
    }
    return ProjectorPair{Matrix::identity(n) - p1, p1};
}

Vector embed_photon(std::span<const Complex> amplitudes_12, std::size_t idle_dim) {
    if (amplitudes_12.size() != 2 * idle_dim) throw DimensionMismatch("embed_photon: expected 2 * idle_dim amplitudes");
    Vector out(kPhotonDim * idle_dim);
    std::copy(amplitudes_12.begin(), amplitudes_12.end(), out.begin());
    return out;
}

}  // namespace ifm
