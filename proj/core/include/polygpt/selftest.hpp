#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polygpt::selftest {

struct CheckResult {
    std::string id;
    bool passed = false;
    std::string detail;  // deterministic for fixed options
    double seconds = 0.0;
};

struct Options {
    std::uint64_t seed = 1234;
    int samples = 10000;
    std::string only;  // substring filter over check ids; empty runs all
};

/// Runs the verification suite (extremal-set reproduction, criterion/oracle
/// equivalence, vanishing-volume bounds, symmetry equivalence, quantum-limit
/// convergence, edge structure, determinism). Each check returns one result.
std::vector<CheckResult> run_acceptance_checks(const Options& options);

}  // namespace polygpt::selftest
