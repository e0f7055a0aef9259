#include "sectorsched/resource_estimator.hpp"

#include "sectorsched/errors.hpp"

#include <algorithm>

namespace sectorsched {

ResourceEstimator::ResourceEstimator(std::size_t n_sectors, double dt, double alpha,
                                     std::optional<std::vector<double>> initial)
    : dt_(dt), alpha_(alpha), available_(n_sectors, 0.0), seeded_(n_sectors, false) {
    if (n_sectors == 0) throw InvalidInput("sector count must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidInput("smoothing factor must lie in (0, 1]");
    if (!(dt > 0.0)) throw InvalidInput("pass duration must be positive");
    if (initial) {
        if (initial->size() != n_sectors) throw InvalidInput("initial estimate has the wrong sector count");
        for (std::size_t i = 0; i < n_sectors; ++i) {
            if (!((*initial)[i] >= 0.0)) throw InvalidInput("initial estimate must be non-negative");
            available_[i] = (*initial)[i];
            seeded_[i] = true;
        }
    }
}

void ResourceEstimator::observe(SectorIndex sector, double used) {
    if (!(used >= 0.0)) throw InvalidInput("used time must be non-negative");
    const double free_time = std::max(0.0, dt_ - used);
    if (!seeded_.at(sector)) {
        available_[sector] = free_time;
        seeded_[sector] = true;
        return;
    }
    available_[sector] = std::max(0.0, (1.0 - alpha_) * available_[sector] + alpha_ * free_time);
}

ResourceEstimate measure_resources(std::size_t n_sectors, double dt, std::span<const double> used_per_pass,
                                   double alpha, std::optional<std::vector<double>> initial) {
    ResourceEstimator est(n_sectors, dt, alpha, std::move(initial));
    for (std::size_t k = 0; k < used_per_pass.size(); ++k) est.observe(k % n_sectors, used_per_pass[k]);
    return est.snapshot();
}

Scenario with_estimated_resources(Scenario s, const ResourceEstimate& estimate) {
    if (estimate.available.size() != s.n_sectors)
        throw InvalidInput("estimate has the wrong sector count");
    s.resources = estimate.available;
    return s;
}

}  // namespace sectorsched
