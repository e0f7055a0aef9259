#pragma once

#include "sectorsched/core_model.hpp"
#include "sectorsched/exact_oracle.hpp"
#include "sectorsched/rotation_simulator.hpp"

#include <string>
#include <vector>

namespace sectorsched {

/// Re-derives the scheduling constraints from raw records, sharing no code
/// with the simulator or the search. Each returned string is one violation:
///   - capacity: per pass, executed durations sum to at most R_sector
///   - field of view: executing sector within n of the task's home sector
///   - coverage: every task runs exactly `cycles` times, nothing else runs
///   - bookkeeping: sector == pass mod N, timestamps non-decreasing
std::vector<std::string> check_trace(const Scenario& s, const SimulationTrace& trace, std::size_t cycles);

/// Same constraints for a pass assignment, plus that `objective` is the
/// last pass actually used.
std::vector<std::string> check_exact_solution(const Scenario& s, const ExactSolution& solution);

}  // namespace sectorsched
