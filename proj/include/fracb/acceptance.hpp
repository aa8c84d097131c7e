#pragma once

#include <string>
#include <vector>

namespace fracb {

// One acceptance criterion: an end-to-end check with fixed parameters and an
// explicit tolerance, runnable on a laptop. `detail` carries the measured
// numbers so a failing line is diagnosable without a rerun.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// ids 1..14; empty selection runs everything, in order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

std::string format_criterion(const CriterionResult& r);

}  // namespace fracb
