#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace goodwin {

struct CheckOptions {
    std::uint64_t seed = 1;
    double dt = 0.01;  // integration step for the simulation-backed checks
};

struct CheckResult {
    bool passed = false;
    std::string detail;
};

/// One named runtime property with a self-contained verification routine.
struct PropertyCheck {
    std::string name;
    std::string summary;
    std::function<CheckResult(const CheckOptions&)> run;
};

/// The built-in suite: kinetics algebra, Laplacian structure, positivity,
/// saturated-input range, incremental-passivity inequalities, static-block
/// gain and the ultimate-bound ceiling.
const std::vector<PropertyCheck>& builtin_checks();

}  // namespace goodwin
