#pragma once

// Cross-checks every closed form against an independent route: closed-form
// C^N against the explicit product, the eigenvector optimum against the
// Bloch-sphere grid, transfer matrices against the channel simulation, the
// structural properties on random instances, the pure trace-norm identity, the
// detector-model reduction and contractivity of the generalized trace
// distance.

#include <cstdint>
#include <string>
#include <vector>

namespace ifm {

struct SuiteResult {
    std::string name;
    double max_error = 0.0;  // worst observed deviation (suite-specific metric)
    double tolerance = 0.0;
    int instances = 0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;

    bool passed() const;
    // One line per suite plus a summary line; deterministic for a given seed.
    std::string text() const;
};

VerifyReport run_verification(std::uint64_t seed);

}  // namespace ifm
