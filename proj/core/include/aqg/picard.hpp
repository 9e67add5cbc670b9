#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aqg/duhamel.hpp"
#include "aqg/existence.hpp"
#include "aqg/norms.hpp"

namespace aqg {

struct PicardConfig {
    double T = 0.1;
    std::size_t n_nodes = 64;
    std::size_t max_iter = 50;
    double tol = 1e-10;
    bool weighted = false;
    /// Permit T beyond the existence time; the report is then marked.
    bool allow_outside_ball = false;

    void validate() const;
};

struct PicardReport {
    bool converged = false;
    bool diverged = false;
    bool weighted = false;
    /// Map applications performed.
    std::size_t iterations = 0;
    /// sup_j ||theta^{(n)}(t_j) - theta^{(n-1)}(t_j)||_{H^s}, n = 1, 2, ...
    std::vector<double> distances;
    /// distances[n] / distances[n-1]; entry i is the ratio at iteration i + 2.
    std::vector<double> contraction_ratios;

    double initial_norm = 0.0;
    double ball_radius = 0.0;
    /// Largest H^s norm over every iterate and node.
    double ball_max = 0.0;
    bool ball_ok = true;

    /// Weighted-mode fields: sup of ||exp((t/2)B(D)) theta^{(n)}(t)||_{H^s}.
    double weighted_ball_max = 0.0;
    bool weighted_ball_ok = true;
    /// Per node, for the final iterate.
    std::vector<double> weighted_norms;
    std::vector<unsigned char> saturated;
    /// max over retained modes and nodes of (t/2)B(k) - t A(k) - t; <= 0 when
    /// the weight is dominated by exp(t).
    double weight_domination_excess = 0.0;

    ExistenceTime existence;
    ConstantsTable constants;
    bool outside_guaranteed_ball = false;
    bool regime_ok = true;

    TimeGrid times;
    Trajectory trajectory;
};

/// Iterates theta^{(n+1)} = L0 - B(theta^{(n)}, theta^{(n)}) from theta^{(0)} = L0
/// until the sup-in-time H^s distance drops below tol. Three consecutive
/// distance increases stop the run as diverged.
PicardReport picard_solve(const SpectralField& theta0, const PicardConfig& cfg, const DissipParams& p,
                          const ConstantsTable& c);

/// Same iteration with the Gevrey-weighted ball tracked at every node.
PicardReport weighted_picard_solve(const SpectralField& theta0, const PicardConfig& cfg, const DissipParams& p,
                                   const ConstantsTable& c);

/// Largest exponent (t/2)B(k) - t A(k) - t over the given modes and times.
double weight_domination_excess(const GridSpec& grid, const DissipParams& p, std::span<const double> times);

}  // namespace aqg
