#include "aqg/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aqg/norms.hpp"
#include "aqg/spectral_ops.hpp"
#include "internal.hpp"

namespace aqg {

TraceRow diagnose(const SpectralField& theta, double t, const DissipParams& p) {
    TraceRow row;
    row.t = t;
    row.l2 = l2_norm(theta);
    row.hs = sobolev_norm(theta, p.s);
    row.h2 = sobolev_norm(theta, 2.0);
    const auto weighted = gevrey_weighted_norm(theta, t, p.s, p);
    row.gevrey_hs = weighted.value;
    row.saturated = weighted.saturated;
    row.diss1 = directional_seminorm(theta, Axis::x1, p.alpha, 0.0);
    row.diss2 = directional_seminorm(theta, Axis::x2, p.beta, 0.0);
    row.max_u = max_speed(theta);
    return row;
}

namespace {

/// ETD coefficients for one step size: exp(-hA) and h phi1(-hA) = (1 - exp(-hA)) / A.
struct StepFactors {
    std::vector<double> decay;
    std::vector<double> weight;
};

struct Stepper {
    const SymbolTable& table;
    bool nonlinear;
    std::vector<double> hs_weight;

    /// Factors for h/2 and h; the full step reuses the half-step exponentials.
    std::pair<StepFactors, StepFactors> factors(double h) const {
        const std::size_t n = table.dissipation.size();
        StepFactors half{std::vector<double>(n), std::vector<double>(n)};
        StepFactors full{std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            const double a = table.dissipation[i];
            const double d = std::exp(-0.5 * h * a);
            const double w = a > 0.0 ? -std::expm1(-0.5 * h * a) / a : 0.5 * h;
            half.decay[i] = d;
            half.weight[i] = w;
            full.decay[i] = d * d;
            full.weight[i] = w * (1.0 + d);
        }
        return {std::move(half), std::move(full)};
    }

    /// theta_{n+1} = exp(-hA) theta_n - h phi1(hA) N_n
    static SpectralField etd_step(const SpectralField& theta, const SpectralField& term, const StepFactors& f) {
        SpectralField out(theta.grid());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = f.decay[i] * theta[i] - f.weight[i] * term[i];
        }
        return out;
    }

    double hs_norm(const SpectralField& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            sum += hs_weight[i] * std::norm(f[i]);
        }
        return std::sqrt(sum);
    }

    double hs_distance(const SpectralField& a, const SpectralField& b) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            sum += hs_weight[i] * std::norm(a[i] - b[i]);
        }
        return std::sqrt(sum);
    }

    detail::NonlinearEval rhs(const SpectralField& theta) const {
        if (nonlinear) {
            return detail::evaluate_bilinear(theta, theta);
        }
        return {SpectralField(theta.grid()), max_speed(theta)};
    }
};

/// 2 int_0^h sum_k A(k) |theta_k(t)|^2 dt, with |theta_k|^2 interpolated
/// geometrically between the step ends (exact for pure linear decay).
double step_dissipation(const SymbolTable& table, const SpectralField& before, const SpectralField& after, double h) {
    double total = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        const double a = table.dissipation[i];
        if (a == 0.0) {
            continue;
        }
        const double e0 = std::norm(before[i]);
        const double e1 = std::norm(after[i]);
        if (e0 == 0.0 && e1 == 0.0) {
            continue;
        }
        if (e1 == 0.0) {
            total += e0;
            continue;
        }
        if (e0 == 0.0) {
            total += a * h * e1;
            continue;
        }
        double log_mean;
        if (std::abs(e0 - e1) <= 1e-9 * std::max(e0, e1)) {
            log_mean = 0.5 * (e0 + e1);
        } else {
            log_mean = (e0 - e1) / std::log(e0 / e1);
        }
        total += 2.0 * a * h * log_mean;
    }
    return total;
}

void validate_options(const EvolveOptions& o) {
    if (!(o.cfl > 0.0)) {
        throw std::invalid_argument("time.cfl must be positive");
    }
    if (!(o.tol > 0.0)) {
        throw std::invalid_argument("time.tol must be positive");
    }
    if (!(o.initial_step > 0.0) || !(o.max_step > 0.0)) {
        throw std::invalid_argument("step sizes must be positive");
    }
    if (o.trace_stride == 0) {
        throw std::invalid_argument("time.trace_stride must be >= 1");
    }
}

}  // namespace

EvolveResult evolve_from(const SpectralField& state, double t_start, double t_end, const DissipParams& p,
                         const EvolveOptions& options) {
    p.validate();
    validate_options(options);
    if (!(t_end > t_start)) {
        throw std::invalid_argument("evolve: horizon must be positive");
    }
    detail::require_mean_zero(state, "evolve");

    const auto& grid = state.grid();
    const SymbolTable table = SymbolTable::build(grid, p);
    Stepper stepper{table, !options.disable_nonlinearity, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        stepper.hs_weight[i] = std::pow(1.0 + table.k_squared[i], p.s);
    }
    const double spacing = 2.0 * std::numbers::pi / static_cast<double>(std::max(grid.n1, grid.n2));

    std::vector<double> stops;
    for (double tc : options.checkpoint_times) {
        if (tc > t_start && tc < t_end) {
            stops.push_back(tc);
        }
    }
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    stops.push_back(t_end);

    EvolveResult result;
    SpectralField theta = state;
    double t = t_start;
    double dissipated = 0.0;

    auto record = [&](double dt) {
        TraceRow row = diagnose(theta, t, p);
        row.dt = dt;
        row.dissipated = dissipated;
        result.trace.rows.push_back(row);
        if (options.keep_states) {
            result.trace.states.push_back(theta);
        }
    };
    auto finish = [&](bool aborted, std::string message) {
        result.final_state = theta;
        result.t_final = t;
        result.aborted = aborted;
        result.diagnostic = std::move(message);
        return result;
    };

    record(0.0);
    for (double stop : stops) {
        double h = options.initial_step;
        std::size_t since_trace = 0;
        while (t < stop) {
            if (result.accepted_steps >= options.max_steps) {
                return finish(true, "step budget exhausted at t=" + std::to_string(t));
            }
            const auto start_eval = stepper.rhs(theta);
            if (!start_eval.term.all_finite() || !std::isfinite(start_eval.max_speed)) {
                return finish(true, "non-finite nonlinear term at t=" + std::to_string(t));
            }
            double cap = std::min(options.max_step, stop - t);
            if (start_eval.max_speed > 0.0) {
                cap = std::min(cap, options.cfl * spacing / start_eval.max_speed);
            }
            double step = std::min(h, cap);

            SpectralField next;
            double err = 0.0;
            while (true) {
                const auto [half_f, full_f] = stepper.factors(step);
                const SpectralField coarse = Stepper::etd_step(theta, start_eval.term, full_f);
                const SpectralField half = Stepper::etd_step(theta, start_eval.term, half_f);
                const SpectralField fine = Stepper::etd_step(half, stepper.rhs(half).term, half_f);
                const double scale = std::max(stepper.hs_norm(fine), std::numeric_limits<double>::min());
                err = stepper.hs_distance(fine, coarse) / scale;
                if (err <= options.tol) {
                    next = options.local_extrapolation ? 2.0 * fine - coarse : fine;
                    break;
                }
                if (!std::isfinite(err)) {
                    err = std::numeric_limits<double>::infinity();
                }
                ++result.rejected_steps;
                step *= std::isfinite(err) ? std::max(0.2, 0.9 * std::sqrt(options.tol / err)) : 0.2;
                if (step < 1e-14 * (1.0 + std::abs(t))) {
                    return finish(true, "step size underflow at t=" + std::to_string(t));
                }
            }
            if (!next.all_finite()) {
                return finish(true, "non-finite state after step at t=" + std::to_string(t));
            }

            dissipated += step_dissipation(table, theta, next, step);
            theta = std::move(next);
            t = step == stop - t ? stop : t + step;
            ++result.accepted_steps;

            const double growth = err > 0.0 ? std::clamp(0.9 * std::sqrt(options.tol / err), 0.2, 2.0) : 2.0;
            h = step * growth;

            if (++since_trace == options.trace_stride || t >= stop) {
                record(step);
                since_trace = 0;
            }
        }
        if (stop < t_end && options.on_checkpoint) {
            options.on_checkpoint(Checkpoint{theta, p, t});
        }
    }
    return finish(false, {});
}

EvolveResult evolve(const SpectralField& theta0, double T, const DissipParams& p, const EvolveOptions& options) {
    return evolve_from(theta0, 0.0, T, p, options);
}

EvolveResult glue_continue(const Checkpoint& checkpoint, const GridSpec& grid, double T_extra, const DissipParams& p,
                           const EvolveOptions& options) {
    require_compatible(checkpoint, grid, p);
    return evolve_from(checkpoint.state, checkpoint.t, checkpoint.t + T_extra, p, options);
}

}  // namespace aqg
