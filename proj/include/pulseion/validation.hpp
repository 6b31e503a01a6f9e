#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pulseion/core.hpp"
#include "pulseion/precision.hpp"

namespace pulseion {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Test hook: lets the harness tamper with the B coefficient feeding the DP
// side of the DP-vs-enumeration check (mutation sanity). Identity by default.
struct ValidationHooks {
    std::function<cplx(cplx)> perturb_b = [](cplx b) { return b; };
};

// quick: representation equivalence, exact limits, omega = 0 reduction.
// full: adds the PDE cross-check at (1,3,1) and the omega = 0 sweep slope.
std::vector<CheckResult> run_validation(bool full, const ValidationHooks& hooks = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace pulseion
