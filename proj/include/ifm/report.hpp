#pragma once

// Tabular data behind the command-line front end: loss sweeps over N and a,
// the zero-error existence boundary, and the large-N ladder.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ifm/transfer.hpp"

namespace ifm {

enum class OutputFormat { Csv, Json };

struct SweepSpec {
    int n_min = 2;
    int n_max = 10;
    int n_step = 1;
    std::vector<double> a_list;
    double q = 1.0;
    OutputFormat format = OutputFormat::Csv;
    std::string output_path;

    // Throws InvalidSpec naming the offending field.
    void validate() const;
};

struct ReportRecord {
    int n = 0;
    double a = 0.0;
    double q = 0.0;
    double ploss_min_over_q = 0.0;
    std::optional<double> ploss_plus_over_q;  // absent when k1 > 1
    double k1 = 0.0;
    Regime regime = Regime::Sub;
    double theta1 = 0.0;
    std::optional<double> theta2;  // absent when k1 > 1
    double p_error_min = 0.0;
};

// Cells are empty (monostate), integers, reals or strings.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

// Comma-separated, header first, reals with 17 significant digits, '\n' line
// endings, empty cells for absent values.
std::string to_csv(const Table& t);
// Array of objects keyed by the header; absent values are null.
std::string to_json(const Table& t);
std::string render(const Table& t, OutputFormat format);

// One record per (a, N), a-major in a_list order. Points are evaluated in
// parallel and collected in order.
std::vector<ReportRecord> ploss_sweep(const SweepSpec& spec);
Table to_table(const std::vector<ReportRecord>& records);

// a* = (1 - sin(pi/2N)) / (1 + sin(pi/2N)), where k1 = 1. Requires n_min >= 2.
Table boundary_table(int n_min, int n_max);
double boundary_transparency(int n_cycles);

// Geometric ladder n_min, 2 n_min, ... <= n_max with columns n, exact_min,
// exact_plus, leading, theta1 (reported with a negative sign, since phi_0 sits
// on the negative x side of the Bloch sphere) and theta2.
Table asymptotics_table(double a, double q, int n_min, int n_max);

}  // namespace ifm
