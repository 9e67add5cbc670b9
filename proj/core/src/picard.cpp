#include "aqg/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aqg/spectral_ops.hpp"
#include "internal.hpp"

namespace aqg {

void PicardConfig::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument("picard.T must be positive");
    }
    if (n_nodes < 2) {
        throw std::invalid_argument("picard.n_nodes must be >= 2");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("picard.tol must be positive");
    }
}

double weight_domination_excess(const GridSpec& grid, const DissipParams& p, std::span<const double> times) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavenumber_at(i);
        if (!grid.dealias_retained(k)) {
            continue;
        }
        const double a = dissipation_symbol(k, p);
        const double b = gevrey_symbol(k, p);
        for (double t : times) {
            worst = std::max(worst, 0.5 * t * b - t * a - t);
        }
    }
    return worst;
}

namespace {

double sup_norm(const Trajectory& traj, double s) {
    double worst = 0.0;
    for (const auto& f : traj) {
        worst = std::max(worst, sobolev_norm(f, s));
    }
    return worst;
}

double sup_distance(const Trajectory& a, const Trajectory& b, double s) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        worst = std::max(worst, sobolev_norm(a[j] - b[j], s));
    }
    return worst;
}

void track_weighted(PicardReport& report, const Trajectory& traj, const DissipParams& p, bool final_iterate) {
    if (final_iterate) {
        report.weighted_norms.assign(traj.size(), 0.0);
        report.saturated.assign(traj.size(), 0);
    }
    for (std::size_t j = 0; j < traj.size(); ++j) {
        const auto w = gevrey_weighted_norm(traj[j], report.times.at(j), p.s, p);
        report.weighted_ball_max = std::max(report.weighted_ball_max, w.value);
        if (final_iterate) {
            report.weighted_norms[j] = w.value;
            report.saturated[j] = w.saturated ? 1 : 0;
        }
    }
}

PicardReport run(const SpectralField& theta0, PicardConfig cfg, const DissipParams& p, const ConstantsTable& c,
                 bool weighted) {
    cfg.validate();
    p.validate();
    c.validate();
    detail::require_mean_zero(theta0, "picard");

    PicardReport report;
    report.weighted = weighted;
    report.constants = c;
    report.regime_ok = p.in_theorem_regime();
    report.initial_norm = sobolev_norm(theta0, p.s);
    report.ball_radius = 2.0 * report.initial_norm;
    report.existence = existence_time(report.initial_norm, p, c, weighted);
    if (!(cfg.T <= report.existence.T)) {
        if (!cfg.allow_outside_ball) {
            throw std::invalid_argument("picard: horizon exceeds the guaranteed existence time");
        }
        report.outside_guaranteed_ball = true;
    }
    report.times = TimeGrid{cfg.T, cfg.n_nodes};

    std::vector<double> node_times(cfg.n_nodes);
    for (std::size_t j = 0; j < cfg.n_nodes; ++j) {
        node_times[j] = report.times.at(j);
    }
    report.weight_domination_excess = weight_domination_excess(theta0.grid(), p, node_times);

    const Trajectory linear = linear_trajectory(theta0, report.times, p);
    Trajectory current = linear;
    report.ball_max = sup_norm(current, p.s);
    if (weighted) {
        track_weighted(report, current, p, false);
    }

    if (theta0.is_zero()) {
        report.converged = true;
        report.trajectory = std::move(current);
        if (weighted) {
            track_weighted(report, report.trajectory, p, true);
        }
        report.ball_ok = true;
        return report;
    }

    std::size_t increases = 0;
    for (std::size_t n = 1; n <= cfg.max_iter; ++n) {
        const Trajectory duhamel = duhamel_bilinear(current, current, report.times, p);
        Trajectory next;
        next.reserve(current.size());
        for (std::size_t j = 0; j < current.size(); ++j) {
            next.push_back(linear[j] - duhamel[j]);
        }
        const double d = sup_distance(next, current, p.s);
        report.iterations = n;
        if (!report.distances.empty()) {
            const double prev = report.distances.back();
            report.contraction_ratios.push_back(prev > 0.0 ? d / prev : 0.0);
            increases = d > prev ? increases + 1 : 0;
        }
        report.distances.push_back(d);
        report.ball_max = std::max(report.ball_max, sup_norm(next, p.s));
        if (weighted) {
            track_weighted(report, next, p, false);
        }
        current = std::move(next);

        if (!std::isfinite(d) || increases >= 3) {
            report.diverged = true;
            break;
        }
        if (d < cfg.tol) {
            report.converged = true;
            break;
        }
    }

    report.ball_ok = report.ball_max <= report.ball_radius + cfg.tol;
    report.trajectory = std::move(current);
    if (weighted) {
        track_weighted(report, report.trajectory, p, true);
        report.weighted_ball_ok = report.weighted_ball_max <= report.ball_radius + cfg.tol;
    }
    return report;
}

}  // namespace

PicardReport picard_solve(const SpectralField& theta0, const PicardConfig& cfg, const DissipParams& p,
                          const ConstantsTable& c) {
    return run(theta0, cfg, p, c, cfg.weighted);
}

PicardReport weighted_picard_solve(const SpectralField& theta0, const PicardConfig& cfg, const DissipParams& p,
                                   const ConstantsTable& c) {
    return run(theta0, cfg, p, c, true);
}

}  // namespace aqg
