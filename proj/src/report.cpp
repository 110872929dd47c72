#include "ifm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "ifm/asymptotics.hpp"
#include "ifm/errors.hpp"
#include "ifm/optimal.hpp"

namespace ifm {

namespace {

constexpr int kSweepOracleGrid = 48;

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

ReportRecord evaluate_point(int n, double a, double q) {
    const IfmParams unit_prior(n, a, 1.0);
    const IfmParams params(n, a, q);
    const TransferCoeffs c = coeffs(unit_prior);
    const Angles ang = angles(unit_prior);
    ReportRecord r;
    r.n = n;
    r.a = a;
    r.q = q;
    r.ploss_min_over_q = min_ploss(unit_prior).value;
    r.k1 = c.k1;
    r.regime = c.regime;
    r.theta1 = ang.theta1;
    r.theta2 = ang.theta2;
    if (c.k1 <= 1.0) {
        r.ploss_plus_over_q = best_zero_error(unit_prior).value;
        r.p_error_min = 0.0;
    } else {
        r.p_error_min = zero_error_states(params, kSweepOracleGrid).min_error;
    }
    return r;
}

}  // namespace

void SweepSpec::validate() const {
    if (n_min < 1) throw InvalidSpec("n_min: must be >= 1");
    if (n_max < n_min) throw InvalidSpec("n_max: must be >= n_min");
    if (n_step < 1) throw InvalidSpec("n_step: must be >= 1");
    if (a_list.empty()) throw InvalidSpec("a_list: must not be empty");
    for (double a : a_list) {
        if (!(a >= 0.0 && a < 1.0)) throw InvalidSpec("a_list: every a must lie in [0, 1)");
    }
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidSpec("q: must lie in [0, 1]");
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, long long>) {
                        out += std::to_string(v);
                    } else if constexpr (std::is_same_v<T, double>) {
                        out += format_real(v);
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        out += v;
                    }
                },
                row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        obj[t.header[i]] = nullptr;
                    } else {
                        obj[t.header[i]] = v;
                    }
                },
                row[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string render(const Table& t, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(t) : to_json(t);
}

std::vector<ReportRecord> ploss_sweep(const SweepSpec& spec) {
    spec.validate();
    struct Point {
        int n;
        double a;
    };
    std::vector<Point> points;
    for (double a : spec.a_list) {
        for (int n = spec.n_min; n <= spec.n_max; n += spec.n_step) points.push_back({n, a});
    }
    std::vector<ReportRecord> records(points.size());
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < points.size(); i += workers) {
                    records[i] = evaluate_point(points[i].n, points[i].a, spec.q);
                }
            });
        }
    }
    return records;
}

Table to_table(const std::vector<ReportRecord>& records) {
    Table t;
    t.header = {"n",     "a",      "q",      "ploss_min_over_q", "ploss_plus_over_q",
                "k1",    "regime", "theta1", "theta2",           "p_error_min"};
    for (const auto& r : records) {
        t.rows.push_back({Cell{static_cast<long long>(r.n)}, Cell{r.a}, Cell{r.q}, Cell{r.ploss_min_over_q},
                          optional_cell(r.ploss_plus_over_q), Cell{r.k1}, Cell{std::string(to_string(r.regime))},
                          Cell{r.theta1}, optional_cell(r.theta2), Cell{r.p_error_min}});
    }
    return t;
}

double boundary_transparency(int n_cycles) {
    const double s = std::sin(std::numbers::pi / (2.0 * n_cycles));
    return (1.0 - s) / (1.0 + s);
}

Table boundary_table(int n_min, int n_max) {
    if (n_min < 2) throw InvalidSpec("n_min: must be >= 2");
    if (n_max < n_min) throw InvalidSpec("n_max: must be >= n_min");
    Table t;
    t.header = {"n", "a_star"};
    for (int n = n_min; n <= n_max; ++n) {
        t.rows.push_back({Cell{static_cast<long long>(n)}, Cell{boundary_transparency(n)}});
    }
    return t;
}

Table asymptotics_table(double a, double q, int n_min, int n_max) {
    if (!(a >= 0.0 && a < 1.0)) {
        throw DegenerateTransparency("a: asymptotics require 0 <= a < 1");
    }
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidSpec("q: must lie in [0, 1]");
    Table t;
    t.header = {"n", "exact_min", "exact_plus", "leading", "theta1", "theta2"};
    for (int n : geometric_ladder(n_min, n_max)) {
        const IfmParams p(n, a, q);
        const Angles ang = angles(p);
        std::optional<double> plus;
        if (ang.theta2) plus = best_zero_error(p).value;
        t.rows.push_back({Cell{static_cast<long long>(n)}, Cell{min_ploss(p).value}, optional_cell(plus),
                          Cell{leading_term(p)}, Cell{-ang.theta1}, optional_cell(ang.theta2)});
    }
    return t;
}

}  // namespace ifm
