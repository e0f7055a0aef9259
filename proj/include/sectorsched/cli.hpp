#pragma once

#include "sectorsched/core_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sectorsched::cli {

/// Exit codes: 0 success, 1 invalid input or validation failure,
/// 2 infeasible scenario or search limits exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInfeasible = 2;

/// One row of the `compare` output.
struct ComparisonRow {
    std::string policy;
    double max_relative_load = 0.0;
    double worst_revisit_rotations = 0.0;
    std::int64_t completion_pass = -1;
};

/// Greedy, broadside and EDF simulated for `cycles` cycles (>= 2), plus
/// the exact oracle when `with_exact` is set. Returns the exact row only
/// when the scenario fits the default search limits; `note` receives the
/// reason otherwise.
std::vector<ComparisonRow> compare_policies(const Scenario& s, std::size_t cycles, bool with_exact,
                                            std::string* note = nullptr);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sectorsched::cli
