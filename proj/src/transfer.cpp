#include "ifm/transfer.hpp"

#include <cmath>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

// Terms of the binomial expansion kept in the Critical band. Successive terms
// shrink by roughly N^2 |1 - k1^2| / k2^2, which is below 1e-8 there.
constexpr int kCriticalTerms = 8;

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// Divides a weighted value by ((1 - a)/2)^N without forming the power.
double unweight(double weighted, double prefactor, int n) {
    if (weighted == 0.0) return 0.0;
    const double sign = weighted < 0.0 ? -1.0 : 1.0;
    return sign * std::exp(std::log(std::abs(weighted)) - n * std::log(prefactor));
}

void fill_critical(TransferCoeffs& c, double d) {
    // f1 = sum_{odd k} C(N,k) d^{(k-1)/2} k2^{N-k},
    // f2 = sum_{even k} C(N,k) d^{k/2} k2^{N-k}; at d = 0 these are the limits
    // N k2^{N-1} and k2^N. Weighting by pre^N gives (pre k2)^{N-k} pre^k.
    const double pre = c.prefactor_base;
    const double base = pre * c.k2;
    double wf1 = 0.0;
    double wf2 = 0.0;
    for (int k = 0; k <= std::min(c.n, kCriticalTerms); ++k) {
        const double term = binomial(c.n, k) * std::pow(base, c.n - k) * std::pow(pre, k);
        if (k % 2 == 0) {
            wf2 += term * std::pow(d, k / 2);
        } else {
            wf1 += term * std::pow(d, (k - 1) / 2);
        }
    }
    c.weighted_f1 = wf1;
    c.weighted_f2 = wf2;
    c.f1 = unweight(wf1, pre, c.n);
    c.f2 = unweight(wf2, pre, c.n);
    c.sigma1 = c.f1 * std::sqrt(std::abs(d));
    c.sigma2 = c.f2;
}

void fill_sub(TransferCoeffs& c, double d) {
    const double pre = c.prefactor_base;
    const double s = std::sqrt(d);
    // lambda_pm = pre (k2 +- s) are the eigenvalues of the single-cycle matrix;
    // 0 <= lambda_- <= lambda_+ <= 1.
    const double lambda_plus = pre * (c.k2 + s);
    const double lambda_minus = pre * (c.k2 - s);
    const double top = std::pow(lambda_plus, c.n);
    // ratio^N with ratio = lambda_- / lambda_+, computed through log1p so that
    // 1 - ratio^N keeps its relative accuracy when s is small.
    double ratio_n = 0.0;
    double one_minus_ratio_n = 1.0;
    if (lambda_minus > 0.0) {
        const double log_ratio = std::log1p(-2.0 * s / (c.k2 + s));
        ratio_n = std::exp(c.n * log_ratio);
        one_minus_ratio_n = -std::expm1(c.n * log_ratio);
    } else {
        ratio_n = std::pow(lambda_minus / lambda_plus, c.n);
        one_minus_ratio_n = 1.0 - ratio_n;
    }
    c.weighted_f1 = top * one_minus_ratio_n / (2.0 * s);
    c.weighted_f2 = top * (1.0 + ratio_n) / 2.0;
    c.f1 = unweight(c.weighted_f1, pre, c.n);
    c.f2 = unweight(c.weighted_f2, pre, c.n);
    c.sigma1 = c.f1 * s;
    c.sigma2 = c.f2;
}

void fill_super(TransferCoeffs& c, double d) {
    const double pre = c.prefactor_base;
    const double w = std::sqrt(-d);
    // (k2 + i w)^N = |z|^N e^{i N phi}; the first-quadrant position of this
    // number is what keeps f1 and f2 positive.
    const double modulus = pre * std::hypot(c.k2, w);
    const double phase = std::atan2(w, c.k2);
    const double scale = std::pow(modulus, c.n);
    c.weighted_f2 = scale * std::cos(c.n * phase);
    c.weighted_f1 = scale * std::sin(c.n * phase) / w;
    c.f1 = unweight(c.weighted_f1, pre, c.n);
    c.f2 = unweight(c.weighted_f2, pre, c.n);
    c.sigma1 = c.f1 * w;
    c.sigma2 = c.f2;
}

}  // namespace

PureState::PureState(Vector amplitudes, Basis basis) : amp_(std::move(amplitudes)), basis_(basis) {
    if (std::abs(squared_norm(amp_) - 1.0) > 1e-12) throw Error("PureState: amplitudes are not normalized");
}

PureState PureState::normalized(Vector amplitudes, Basis basis) {
    const double n2 = squared_norm(amplitudes);
    if (!(n2 > 0.0)) throw Error("PureState::normalized: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : amplitudes) z *= inv;
    return PureState(std::move(amplitudes), basis);
}

PureState PureState::in_basis(Basis target, double theta) const {
    if (dim() != 2) throw DimensionMismatch("PureState::in_basis: single-photon states only");
    if (target == basis_) return *this;
    const Matrix u = basis_change(theta);
    const Matrix m = target == Basis::New ? u : u.adjoint();
    return PureState::normalized(m * amp_, target);
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Sub:
            return "SUB";
        case Regime::Critical:
            return "CRITICAL";
        case Regime::Super:
            return "SUPER";
    }
    return "?";
}

Matrix cycle_matrix(const IfmParams& p) {
    const double c = std::cos(p.theta());
    const double s = std::sin(p.theta());
    return Matrix{{c, -s}, {p.a() * s, p.a() * c}};
}

Matrix cycle_matrix_new_basis(const IfmParams& p) {
    const double a = p.a();
    const double half_loss = (1.0 - a) / 2.0;
    const double c = (1.0 + a) * std::cos(p.theta()) / 2.0;
    const double s = (1.0 + a) * std::sin(p.theta()) / 2.0;
    return Matrix{{half_loss + c, -s}, {s, c - half_loss}};
}

Matrix transfer_present(const IfmParams& p) {
    const Matrix step = cycle_matrix(p);
    Matrix out = Matrix::identity(2);
    for (int i = 0; i < p.n_cycles(); ++i) out = step * out;
    return out;
}

Matrix transfer_absent() { return Matrix{{0.0, -1.0}, {1.0, 0.0}}; }

Matrix basis_change(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return Matrix{{c, -s}, {s, c}};
}

TransferCoeffs coeffs(const IfmParams& p) {
    if (p.a() >= kTransparentLimit) {
        throw DegenerateTransparency("coeffs: closed forms require a < 1");
    }
    TransferCoeffs c;
    c.n = p.n_cycles();
    const double ratio = (1.0 + p.a()) / (1.0 - p.a());
    c.k1 = ratio * std::sin(p.theta());
    c.k2 = ratio * std::cos(p.theta());
    c.prefactor_base = (1.0 - p.a()) / 2.0;
    const double d = 1.0 - c.k1 * c.k1;
    if (std::abs(d) <= kCriticalBand) {
        c.regime = Regime::Critical;
        fill_critical(c, d);
    } else if (d > 0.0) {
        c.regime = Regime::Sub;
        fill_sub(c, d);
    } else {
        c.regime = Regime::Super;
        fill_super(c, d);
    }
    return c;
}

Matrix closed_form_C(const TransferCoeffs& c) {
    const double f1 = c.weighted_f1;
    const double f2 = c.weighted_f2;
    return Matrix{{f1 + f2, -c.k1 * f1}, {c.k1 * f1, f2 - f1}};
}

Matrix closed_form_C(const IfmParams& p) { return closed_form_C(coeffs(p)); }

}  // namespace ifm
