#ifndef CYCLELAB_ACCEPTANCE_HPP
#define CYCLELAB_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace cyclelab {

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult()> run;
};

/// The reproduction suite: every criterion constructs its own systems and
/// frozen expected values and reports pass/fail with a short detail line.
std::vector<Criterion> acceptance_criteria();

/// Runs the criteria whose names contain filter (all when empty), printing
/// one [PASS]/[FAIL] line each; returns the number of failures.
int run_acceptance(const std::string& filter, std::ostream& out);

}  // namespace cyclelab

#endif
