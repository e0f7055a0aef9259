#pragma once

#include "sectorsched/core_model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sectorsched {

/// Per-sector surveillance time inferred from what other radar functions
/// consumed, smoothed exponentially:
///   estimate <- (1 - alpha) * estimate + alpha * max(0, dt - used)
/// The first observation of a sector initializes its estimate unless an
/// explicit starting value is given.
struct ResourceEstimate {
    std::vector<double> available;
    double alpha = 1.0;
};

class ResourceEstimator {
public:
    /// Throws InvalidInput unless alpha is in (0, 1] and dt > 0.
    ResourceEstimator(std::size_t n_sectors, double dt, double alpha,
                      std::optional<std::vector<double>> initial = std::nullopt);

    /// Throws InvalidInput for negative `used`.
    void observe(SectorIndex sector, double used);

    double estimate(SectorIndex sector) const { return available_.at(sector); }
    bool seeded(SectorIndex sector) const { return seeded_.at(sector); }
    ResourceEstimate snapshot() const { return ResourceEstimate{available_, alpha_}; }

private:
    double dt_;
    double alpha_;
    std::vector<double> available_;
    std::vector<bool> seeded_;
};

/// Feeds `used_per_pass[k]` to sector k mod N in order.
ResourceEstimate measure_resources(std::size_t n_sectors, double dt, std::span<const double> used_per_pass,
                                   double alpha, std::optional<std::vector<double>> initial = std::nullopt);

/// The scenario with R_i replaced by the estimate.
Scenario with_estimated_resources(Scenario s, const ResourceEstimate& estimate);

}  // namespace sectorsched
