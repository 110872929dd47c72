// ifm: sweeps, boundary tables, single-point optimization and discrimination
// reports, and the verification runner.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifm/errors.hpp"
#include "ifm/optimal.hpp"
#include "ifm/report.hpp"
#include "ifm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitVerifyFailed = 3;

struct Options {
    int n = 5;
    int n_min = 2;
    int n_max = 10;
    int n_step = 1;
    std::string a_text = "0";
    double q = 1.0;
    std::vector<double> state;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 20240601;
};

ifm::OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return ifm::OutputFormat::Csv;
    if (s == "json") return ifm::OutputFormat::Json;
    throw ifm::InvalidSpec("format: expected csv or json");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ifm::InvalidSpec("out: cannot open " + path);
    f << text;
}

std::vector<double> parse_a_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ifm::InvalidSpec("a: not a number: '" + item + "'");
        }
        if (used != item.size()) throw ifm::InvalidSpec("a: not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

double single_a(const Options& o) {
    const auto list = parse_a_list(o.a_text);
    if (list.size() != 1) throw ifm::InvalidSpec("a: expected a single value");
    return list.front();
}

nlohmann::ordered_json complex_json(ifm::Complex z) { return {z.real(), z.imag()}; }

nlohmann::ordered_json matrix_json(const ifm::Matrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json state_json(const ifm::PureState& s) {
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) arr.push_back(complex_json(s[i]));
    return arr;
}

nlohmann::ordered_json optimum_json(const ifm::Optimum& opt) {
    return {{"value", opt.value},
            {"angle", opt.angle},
            {"state_old", state_json(opt.state_old)},
            {"state_new", state_json(opt.state_new)},
            {"degenerate", opt.degenerate}};
}

int cmd_ploss_sweep(const Options& o) {
    ifm::SweepSpec spec;
    spec.n_min = o.n_min;
    spec.n_max = o.n_max;
    spec.n_step = o.n_step;
    spec.a_list = parse_a_list(o.a_text);
    spec.q = o.q;
    spec.format = parse_format(o.format);
    spec.output_path = o.out;
    emit(ifm::render(ifm::to_table(ifm::ploss_sweep(spec)), spec.format), spec.output_path);
    return kExitOk;
}

int cmd_boundary(const Options& o) {
    emit(ifm::render(ifm::boundary_table(o.n_min, o.n_max), parse_format(o.format)), o.out);
    return kExitOk;
}

int cmd_asymptotics(const Options& o) {
    emit(ifm::render(ifm::asymptotics_table(single_a(o), o.q, o.n_min, o.n_max), parse_format(o.format)), o.out);
    return kExitOk;
}

int cmd_optimize(const Options& o) {
    const ifm::IfmParams p(o.n, single_a(o), o.q);
    const ifm::TransferCoeffs c = ifm::coeffs(p);
    nlohmann::ordered_json doc;
    doc["n"] = p.n_cycles();
    doc["a"] = p.a();
    doc["q"] = p.q();
    doc["k1"] = c.k1;
    doc["regime"] = ifm::to_string(c.regime);
    doc["min_ploss"] = optimum_json(ifm::min_ploss(p));
    const auto zero = ifm::zero_error_states(p);
    if (zero.states) {
        doc["phi_plus"] = optimum_json((*zero.states)[0]);
        doc["phi_minus"] = optimum_json((*zero.states)[1]);
    } else {
        doc["phi_plus"] = nullptr;
        doc["phi_minus"] = nullptr;
    }
    doc["p_error_min"] = zero.min_error;
    emit(doc.dump(2) + "\n", o.out);
    return kExitOk;
}

int cmd_discriminate(const Options& o) {
    if (o.state.size() != 4) throw ifm::InvalidSpec("state: expected re,im,re,im");
    ifm::Vector amps{{o.state[0], o.state[1]}, {o.state[2], o.state[3]}};
    const double norm = std::sqrt(std::norm(amps[0]) + std::norm(amps[1]));
    if (!(norm > 0.0)) throw ifm::InvalidSpec("state: zero vector");
    if (std::abs(norm - 1.0) > 1e-6) {
        std::cerr << "warning: state norm " << norm << " renormalized to 1\n";
    }
    for (auto& z : amps) z /= norm;
    const ifm::IfmParams p(o.n, single_a(o), o.q);
    const auto r = ifm::discriminate(ifm::PureState(amps, ifm::Basis::Old), p, true);
    if (std::abs(r.p_fail - (r.p_loss + r.p_error)) > 1e-12) {
        throw ifm::Error("internal: p_fail differs from p_loss + p_error");
    }
    nlohmann::ordered_json doc;
    doc["n"] = p.n_cycles();
    doc["a"] = p.a();
    doc["q"] = p.q();
    doc["state"] = {complex_json(amps[0]), complex_json(amps[1])};
    doc["p_loss"] = r.p_loss;
    doc["p_error"] = r.p_error;
    doc["p_fail"] = r.p_fail;
    doc["inner_product"] = complex_json(r.inner_product);
    doc["lambda1"] = r.lambda1;
    doc["lambda2"] = r.lambda2;
    if (r.povm) {
        doc["povm"] = {{"absent", matrix_json(r.povm->p0)}, {"present", matrix_json(r.povm->p1)}};
    } else {
        doc["povm"] = nullptr;
    }
    emit(doc.dump(2) + "\n", o.out);
    return kExitOk;
}

int cmd_verify(const Options& o) {
    const ifm::VerifyReport report = ifm::run_verification(o.seed);
    emit(report.text(), o.out);
    return report.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interaction-free measurement optimizer"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", o.out, "output path (default stdout)");
    };
    auto add_range = [&](CLI::App* sub) {
        sub->add_option("--n-min", o.n_min);
        sub->add_option("--n-max", o.n_max);
    };
    auto add_point = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "interrogation cycles");
        sub->add_option("--a", o.a_text, "transparency");
        sub->add_option("--q", o.q, "prior of the object being present");
    };

    auto* sweep = app.add_subcommand("ploss-sweep", "minimal and zero-error P_loss/q over N and a");
    add_range(sweep);
    sweep->add_option("--n-step", o.n_step);
    sweep->add_option("--a", o.a_text, "comma-separated transparencies");
    sweep->add_option("--q", o.q);
    add_common(sweep);

    auto* boundary = app.add_subcommand("boundary", "transparency a* where k1 = 1");
    add_range(boundary);
    add_common(boundary);

    auto* asym = app.add_subcommand("asymptotics", "exact and leading-order P_loss over a doubling N ladder");
    add_range(asym);
    asym->add_option("--a", o.a_text, "transparency");
    asym->add_option("--q", o.q);
    add_common(asym);

    auto* optimize = app.add_subcommand("optimize", "optimal input states at one (N, a, q)");
    add_point(optimize);
    optimize->add_option("--out", o.out);

    auto* disc = app.add_subcommand("discriminate", "discrimination report for one input state");
    add_point(disc);
    disc->add_option("--state", o.state, "re,im,re,im")->delimiter(',')->required();
    disc->add_option("--out", o.out);

    auto* verify = app.add_subcommand("verify", "run all cross-check suites");
    verify->add_option("--seed", o.seed);
    verify->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*sweep) return cmd_ploss_sweep(o);
        if (*boundary) return cmd_boundary(o);
        if (*asym) return cmd_asymptotics(o);
        if (*optimize) return cmd_optimize(o);
        if (*disc) return cmd_discriminate(o);
        return cmd_verify(o);
    } catch (const ifm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
