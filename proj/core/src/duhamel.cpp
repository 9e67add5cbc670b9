#include "aqg/duhamel.hpp"

#include <cmath>
#include <stdexcept>

#include "aqg/spectral_ops.hpp"

namespace aqg {

void TimeGrid::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument("time grid horizon must be positive");
    }
    if (nodes < 2) {
        throw std::invalid_argument("time grid needs at least 2 nodes");
    }
}

Trajectory linear_trajectory(const SpectralField& theta0, const TimeGrid& times, const DissipParams& p) {
    times.validate();
    Trajectory out;
    out.reserve(times.nodes);
    for (std::size_t j = 0; j < times.nodes; ++j) {
        out.push_back(apply_semigroup(theta0, times.at(j), p));
    }
    return out;
}

Trajectory duhamel_bilinear(const Trajectory& traj1, const Trajectory& traj2, const TimeGrid& times,
                            const DissipParams& p) {
    times.validate();
    if (traj1.size() != times.nodes || traj2.size() != times.nodes) {
        throw std::invalid_argument("duhamel_bilinear: trajectory length does not match the time grid");
    }
    const auto& grid = traj1.front().grid();
    for (std::size_t j = 0; j < times.nodes; ++j) {
        if (!(traj1[j].grid() == grid) || !(traj2[j].grid() == grid)) {
            throw std::invalid_argument("duhamel_bilinear: grid mismatch at node " + std::to_string(j));
        }
    }

    const double h = times.step();
    std::vector<double> decay(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        decay[i] = std::exp(-h * dissipation_symbol(grid.wavenumber_at(i), p));
    }

    // Trapezoid sum carried forward one node at a time:
    // B_j = E_h (B_{j-1} + h/2 N_{j-1}) + h/2 N_j.
    Trajectory out;
    out.reserve(times.nodes);
    out.emplace_back(grid);
    SpectralField previous_term = bilinear_term(traj1[0], traj2[0]);
    for (std::size_t j = 1; j < times.nodes; ++j) {
        SpectralField term = bilinear_term(traj1[j], traj2[j]);
        SpectralField next(grid);
        const auto& last = out.back();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            next[i] = decay[i] * (last[i] + 0.5 * h * previous_term[i]) + 0.5 * h * term[i];
        }
        out.push_back(std::move(next));
        previous_term = std::move(term);
    }
    return out;
}

}  // namespace aqg
