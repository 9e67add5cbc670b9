#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "aqg/checkpoint.hpp"
#include "aqg/params.hpp"
#include "aqg/spectral_field.hpp"

namespace aqg {

/// One diagnostics node. diss1, diss2 are ||d_1|^alpha theta||_{L2} and
/// ||d_2|^beta theta||_{L2}.
struct TraceRow {
    double t = 0.0;
    double l2 = 0.0;
    double hs = 0.0;
    double h2 = 0.0;
    double gevrey_hs = 0.0;
    double diss1 = 0.0;
    double diss2 = 0.0;
    double max_u = 0.0;
    double dt = 0.0;
    bool saturated = false;
    /// 2 int_{t_start}^{t} (mu diss1^2 + nu diss2^2) accumulated per step.
    double dissipated = 0.0;
};

struct DiagnosticsTrace {
    std::vector<TraceRow> rows;
    /// State at each row, kept only when requested.
    std::vector<SpectralField> states;
};

struct EvolveOptions {
    /// Step size is capped by cfl * (grid spacing) / max|u|.
    double cfl = 0.5;
    /// Relative H^s tolerance on the step-doubling error estimate.
    double tol = 1e-7;
    double initial_step = 1e-3;
    double max_step = 0.05;
    /// Record a trace row every this many accepted steps (plus every stop time).
    std::size_t trace_stride = 10;
    /// Absolute times at which a step boundary is forced and on_checkpoint fires.
    /// The step controller restarts at each of them, so a run resumed from a
    /// checkpoint reproduces the uninterrupted run.
    std::vector<double> checkpoint_times;
    std::function<void(const Checkpoint&)> on_checkpoint;
    bool keep_states = false;
    /// Test hook: pure linear decay.
    bool disable_nonlinearity = false;
    /// Replace the two-half-step result by 2 fine - coarse.
    bool local_extrapolation = true;
    std::size_t max_steps = 50'000'000;
};

struct EvolveResult {
    DiagnosticsTrace trace;
    /// Last valid state (the final state unless aborted).
    SpectralField final_state;
    double t_final = 0.0;
    bool aborted = false;
    std::string diagnostic;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// Exponential-integrator march of the full equation from t = 0 to T.
EvolveResult evolve(const SpectralField& theta0, double T, const DissipParams& p, const EvolveOptions& options = {});

/// Same march from an arbitrary start time on the global clock.
EvolveResult evolve_from(const SpectralField& state, double t_start, double t_end, const DissipParams& p,
                         const EvolveOptions& options = {});

/// Resumes from a stored state; trace times are on the global clock.
/// Throws CheckpointError if the checkpoint does not match grid or p.
EvolveResult glue_continue(const Checkpoint& checkpoint, const GridSpec& grid, double T_extra, const DissipParams& p,
                           const EvolveOptions& options = {});

/// Diagnostics row for a single state (dt and dissipated left at zero).
TraceRow diagnose(const SpectralField& theta, double t, const DissipParams& p);

}  // namespace aqg
