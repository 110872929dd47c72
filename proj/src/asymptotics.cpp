#include "ifm/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "ifm/errors.hpp"
#include "ifm/optimal.hpp"

namespace ifm {

double leading_term(const IfmParams& p) {
    const double pi = std::numbers::pi;
    return p.q() * (1.0 + p.a()) / (1.0 - p.a()) * pi * pi / (4.0 * p.n_cycles());
}

AsymptoticEstimate ploss_plus_asym(const IfmParams& p) {
    AsymptoticEstimate est;
    est.exact = best_zero_error(p).value;
    est.leading = leading_term(p);
    est.residual = est.exact - est.leading;
    est.order_bound = 3.0;
    return est;
}

AsymptoticEstimate ploss_min_asym(const IfmParams& p) {
    AsymptoticEstimate est;
    est.exact = min_ploss(p).value;
    est.leading = leading_term(p);
    est.residual = est.exact - est.leading;
    est.order_bound = 2.0;
    return est;
}

Angles angles(const IfmParams& p) {
    const TransferCoeffs c = coeffs(p);
    Angles out;
    out.theta1 = std::atan2(c.weighted_f1 * c.k1, c.weighted_f2);
    if (c.k1 <= 1.0) out.theta2 = std::atan2(c.k1, std::sqrt(std::max(0.0, 1.0 - c.k1 * c.k1)));
    return out;
}

std::vector<int> geometric_ladder(int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min) throw InvalidSpec("geometric_ladder: need 1 <= n_min <= n_max");
    std::vector<int> out;
    for (long long n = n_min; n <= n_max; n *= 2) out.push_back(static_cast<int>(n));
    return out;
}

double log_log_slope(const std::vector<int>& ladder, const std::function<double(int)>& residual) {
    if (ladder.size() < 2) throw InvalidSpec("log_log_slope: need at least two ladder points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int n : ladder) {
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(std::abs(residual(n)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(ladder.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace ifm
