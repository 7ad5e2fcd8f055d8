#pragma once

#include <string>
#include <vector>

namespace treefrac {

/// Outcome of one verification run against its published reference values.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Run the numbered verification criteria (1..11); empty selection = all.
/// Each criterion is self-contained and pins its own tolerances.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, unsigned threads);

std::string format_criterion_line(const CriterionResult& r);

}  // namespace treefrac
