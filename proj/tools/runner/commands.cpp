#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "aqg/calibration.hpp"
#include "aqg/checkpoint.hpp"
#include "aqg/ensemble.hpp"
#include "aqg/evolve.hpp"
#include "aqg/gevrey.hpp"
#include "aqg/lemmas.hpp"
#include "aqg/norms.hpp"
#include "aqg/picard.hpp"
#include "aqg/region.hpp"

namespace aqg::runner {

namespace fs = std::filesystem;

namespace {

/// Shortest text that reads back to the same double.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + num(values[i]);
    }
    return out;
}

const char* flag(bool b) { return b ? "true" : "false"; }

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    }
}

/// Writes the whole file or throws IoError.
void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

void save_checkpoint(const fs::path& path, const Checkpoint& cp) {
    try {
        write_checkpoint(path, cp);
    } catch (const CheckpointError& e) {
        throw IoError(e.what());
    }
}

/// Creates the output directory and echoes the resolved configuration into it.
fs::path prepare_output(const RunConfig& cfg) {
    make_dir(cfg.output.directory);
    write_text(cfg.output.directory / "config.json", to_json(cfg).dump(2) + "\n");
    return cfg.output.directory;
}

/// Key = value lines for the text reports.
class Report {
  public:
    void put(const std::string& key, const std::string& value) { out_ << key << " = " << value << "\n"; }
    void put(const std::string& key, double value) { put(key, num(value)); }
    void put(const std::string& key, std::size_t value) { put(key, std::to_string(value)); }
    void put(const std::string& key, bool value) { put(key, std::string(flag(value))); }
    void put(const std::string& key, const char* value) { put(key, std::string(value)); }
    void blank() { out_ << "\n"; }
    std::string str() const { return out_.str(); }

  private:
    std::ostringstream out_;
};

/// Maps exceptions escaping a command onto the exit-code contract.
template <class F>
int guarded(std::ostream& log, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        log << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CheckpointError& e) {
        log << "checkpoint error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        log << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
}

ConstantsTable resolve_constants(const RunConfig& cfg, const DissipParams& p, const GridSpec& grid) {
    if (cfg.constants.mode == ConstantsSection::Mode::explicit_values) {
        return cfg.constants.table;
    }
    return calibrate_constants(p, grid, cfg.constants.samples, cfg.constants.seed);
}

EvolveOptions evolve_options(const RunConfig& cfg) {
    EvolveOptions opt;
    opt.cfl = cfg.time.cfl;
    opt.tol = cfg.time.tol;
    opt.trace_stride = cfg.time.trace_stride;
    opt.disable_nonlinearity = cfg.time.disable_nonlinearity;
    return opt;
}

std::string trace_csv(const DiagnosticsTrace& trace) {
    std::string out = std::string(kTraceHeader) + "\n";
    for (const auto& r : trace.rows) {
        out += num(r.t) + "," + num(r.l2) + "," + num(r.hs) + "," + num(r.h2) + "," + num(r.gevrey_hs) + "," +
               num(r.diss1) + "," + num(r.diss2) + "," + num(r.max_u) + "," + num(r.dt) + "\n";
    }
    return out;
}

std::string trace_json(const DiagnosticsTrace& trace) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : trace.rows) {
        rows.push_back({{"t", r.t},
                        {"l2", r.l2},
                        {"hs", r.hs},
                        {"h2", r.h2},
                        {"gevrey_hs", r.gevrey_hs},
                        {"diss1", r.diss1},
                        {"diss2", r.diss2},
                        {"max_u", r.max_u},
                        {"dt", r.dt},
                        {"saturated", r.saturated}});
    }
    return rows.dump(2) + "\n";
}

std::string state_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "state_%05zu.aqgs", index);
    return buf;
}

std::string rate_text(const std::optional<AxisFit>& fit) { return fit ? num(fit->rate) : std::string(); }

void report_picard(Report& r, const std::string& prefix, const PicardReport& rep) {
    r.put(prefix + ".T", rep.times.T);
    r.put(prefix + ".nodes", rep.times.nodes);
    r.put(prefix + ".converged", rep.converged);
    r.put(prefix + ".diverged", rep.diverged);
    r.put(prefix + ".iterations", rep.iterations);
    r.put(prefix + ".distances", join(rep.distances));
    r.put(prefix + ".contraction_ratios", join(rep.contraction_ratios));
    r.put(prefix + ".initial_norm", rep.initial_norm);
    r.put(prefix + ".ball_radius", rep.ball_radius);
    r.put(prefix + ".ball_max", rep.ball_max);
    r.put(prefix + ".ball_ok", rep.ball_ok);
    r.put(prefix + ".outside_guaranteed_ball", rep.outside_guaranteed_ball);
    r.put(prefix + ".regime", rep.regime_ok ? "guaranteed" : "unguaranteed");
    if (rep.weighted) {
        r.put(prefix + ".weighted_ball_max", rep.weighted_ball_max);
        r.put(prefix + ".weighted_ball_ok", rep.weighted_ball_ok);
        r.put(prefix + ".weighted_norms", join(rep.weighted_norms));
        const auto saturated =
            static_cast<std::size_t>(std::count(rep.saturated.begin(), rep.saturated.end(), 1));
        r.put(prefix + ".saturated_nodes", saturated);
        r.put(prefix + ".weight_domination_excess", rep.weight_domination_excess);
    }
}

/// Horizon for one Picard run: the configured override, else the existence time,
/// else (zero or degenerate data) the simulation horizon.
PicardConfig picard_config(const RunConfig& cfg, double existence) {
    PicardConfig pc;
    pc.n_nodes = cfg.picard.n_nodes;
    pc.max_iter = cfg.picard.max_iter;
    pc.tol = cfg.picard.tol;
    if (cfg.picard.T) {
        pc.T = *cfg.picard.T;
    } else if (std::isfinite(existence) && existence > 0.0) {
        pc.T = existence;
    } else {
        pc.T = cfg.time.T;
    }
    pc.allow_outside_ball = !(pc.T <= existence);
    return pc;
}

struct SweepRow {
    double alpha = 0.0;
    double beta = 0.0;
    std::string region;
    std::string error;
    double T0 = 0.0;
    double hs_growth = 0.0;
    std::string rate1;
    std::string rate2;
};

std::string run_dir_name(double alpha, double beta) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "a%.6g_b%.6g", alpha, beta);
    return buf;
}

SweepRow sweep_one(const RunConfig& cfg, double alpha, double beta, const fs::path& runs) {
    SweepRow row;
    row.alpha = alpha;
    row.beta = beta;
    row.region = std::string(to_string(region_classify(alpha, beta)));
    const fs::path dir = runs / run_dir_name(alpha, beta);
    try {
        make_dir(dir);
        DissipParams p = cfg.params;
        p.alpha = alpha;
        p.beta = beta;
        const GridSpec& grid = cfg.sweep.grid;
        const SpectralField theta0 = initial_field(cfg, grid);
        const ConstantsTable c = resolve_constants(cfg, p, grid);
        const double h0 = sobolev_norm(theta0, p.s);
        row.T0 = existence_time(h0, p, c, false).T;

        const EvolveResult res = evolve(theta0, cfg.sweep.T, p, evolve_options(cfg));
        write_text(dir / "trace.csv", trace_csv(res.trace));
        if (res.aborted) {
            throw std::runtime_error("solver aborted: " + res.diagnostic);
        }
        row.hs_growth = h0 > 0.0 ? sobolev_norm(res.final_state, p.s) / h0 : 0.0;
        const RadiusFit fit = analyticity_radius_fit(res.final_state, theta0, res.t_final, p);
        row.rate1 = rate_text(fit.axis1);
        row.rate2 = rate_text(fit.axis2);
    } catch (const std::exception& e) {
        row.error = e.what();
        std::ofstream(dir / "error.txt") << row.error << "\n";
    }
    return row;
}

std::string sweep_line(const SweepRow& r) {
    std::string line = num(r.alpha) + "," + num(r.beta) + "," + r.region + ",";
    if (!r.error.empty()) {
        return line + "error,error,error,error\n";
    }
    return line + num(r.T0) + "," + num(r.hs_growth) + "," + r.rate1 + "," + r.rate2 + "\n";
}

}  // namespace

SpectralField initial_field(const RunConfig& cfg, const GridSpec& grid) {
    const InitConfig& init = cfg.init;
    switch (init.kind) {
        case InitConfig::Kind::random: {
            FieldEnsembleSpec spec;
            spec.seed = init.seed;
            spec.count = 1;
            spec.kmax = init.kmax == 0 ? grid.dealias_kmax() : std::min(init.kmax, grid.dealias_kmax());
            spec.spectrum_slope = init.spectrum_slope;
            SpectralField f = random_band_limited_field(spec, grid, 0);
            const double norm = sobolev_norm(f, cfg.params.s);
            if (init.amplitude == 0.0 || norm == 0.0) {
                return SpectralField::zeros(grid);
            }
            return (init.amplitude / norm) * f;
        }
        case InitConfig::Kind::modes: {
            std::vector<SpectralField::SineMode> modes = init.modes;
            for (auto& m : modes) {
                m.amplitude *= init.amplitude;
            }
            return SpectralField::from_sines(grid, modes);
        }
        case InitConfig::Kind::file: {
            Checkpoint cp = read_checkpoint(init.path);
            if (!(cp.state.grid() == grid)) {
                throw ConfigError("init.path", "stored grid " + to_string(cp.state.grid()) +
                                                   " does not match the run grid " + to_string(grid));
            }
            return std::move(cp.state);
        }
    }
    throw ConfigError("init.kind", "unsupported kind");
}

int run_simulate(const RunConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const SpectralField theta0 = initial_field(cfg, cfg.grid);
        const fs::path out = prepare_output(cfg);

        EvolveOptions opt = evolve_options(cfg);
        opt.checkpoint_times = cfg.time.checkpoint_times;
        opt.keep_states = cfg.time.save_states;
        if (!opt.checkpoint_times.empty()) {
            make_dir(out / "checkpoints");
        }
        std::size_t n_checkpoints = 0;
        opt.on_checkpoint = [&](const Checkpoint& cp) {
            char name[48];
            std::snprintf(name, sizeof name, "checkpoint_%03zu.aqgs", n_checkpoints++);
            save_checkpoint(out / "checkpoints" / name, cp);
        };

        const EvolveResult res = evolve(theta0, cfg.time.T, cfg.params, opt);
        write_text(out / "trace.csv", trace_csv(res.trace));
        if (cfg.output.wants("json")) {
            write_text(out / "trace.json", trace_json(res.trace));
        }
        if (cfg.time.save_states) {
            make_dir(out / "states");
            for (std::size_t i = 0; i < res.trace.states.size(); ++i) {
                save_checkpoint(out / "states" / state_name(i),
                                {res.trace.states[i], cfg.params, res.trace.rows[i].t});
            }
        }
        save_checkpoint(out / "final.aqgs", {res.final_state, cfg.params, res.t_final});

        log << "simulate: t_final = " << num(res.t_final) << ", accepted steps " << res.accepted_steps
            << ", rejected " << res.rejected_steps << ", trace rows " << res.trace.rows.size() << "\n";
        if (res.aborted) {
            log << "simulate: solver aborted: " << res.diagnostic << "\n";
            return static_cast<int>(kExitSolver);
        }
        return static_cast<int>(kExitOk);
    });
}

int run_picard(const RunConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const DissipParams& p = cfg.params;
        const SpectralField theta0 = initial_field(cfg, cfg.grid);
        const fs::path out = prepare_output(cfg);
        const ConstantsTable c = resolve_constants(cfg, p, cfg.grid);
        const double h0 = sobolev_norm(theta0, p.s);
        const ExistenceTime plain_time = existence_time(h0, p, c, false);
        const ExistenceTime weighted_time = existence_time(h0, p, c, true);

        Report r;
        r.put("regime", p.in_theorem_regime() ? "guaranteed" : "unguaranteed");
        r.put("constants.mode",
              cfg.constants.mode == ConstantsSection::Mode::calibrate ? "calibrate" : "explicit");
        r.put("constants.C1", c.c1);
        r.put("constants.C2", c.c2);
        r.put("constants.C3", c.c3);
        r.put("constants.C4", c.c4);
        r.put("initial_norm", h0);
        r.put("T0", plain_time.T);
        r.put("T0.degenerate", plain_time.degenerate);
        r.put("T1", weighted_time.T);
        r.put("T1.cap", weighted_time_cap());
        r.put("margin", plain_time.margin);
        r.blank();

        const PicardReport plain = picard_solve(theta0, picard_config(cfg, plain_time.T), p, c);
        report_picard(r, "plain", plain);
        log << "picard: T0 = " << num(plain_time.T) << ", converged " << flag(plain.converged) << " after "
            << plain.iterations << " iterations\n";
        if (cfg.picard.weighted) {
            r.blank();
            const PicardReport weighted = weighted_picard_solve(theta0, picard_config(cfg, weighted_time.T), p, c);
            report_picard(r, "weighted", weighted);
            log << "picard: T1 = " << num(weighted_time.T) << ", converged " << flag(weighted.converged)
                << " after " << weighted.iterations << " iterations\n";
        }
        write_text(out / "picard_report.txt", r.str());
        return static_cast<int>(kExitOk);
    });
}

int run_lemmas(const RunConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const DissipParams& p = cfg.params;
        const fs::path out = prepare_output(cfg);

        const auto scalar = scalar_inequality_suite(p, cfg.lemmas.grid_density);
        FieldEnsembleSpec spec;
        spec.seed = cfg.lemmas.seed;
        spec.count = cfg.lemmas.samples;
        spec.kmax = cfg.lemmas.kmax == 0 ? cfg.grid.dealias_kmax() : cfg.lemmas.kmax;
        spec.spectrum_slope = cfg.lemmas.spectrum_slope;
        FunctionalSuiteOptions opt;
        opt.grid = cfg.grid;
        opt.threads = cfg.lemmas.threads;
        opt.corrupt_factor = cfg.lemmas.corrupt_factor;
        const auto functional = functional_inequality_suite(spec, p, opt);

        std::string csv = std::string(kLemmasHeader) + "\n";
        std::string constants = "id,case,ratio\n";
        std::string repro = "id,seed,index,case,lhs,rhs\n";
        Report r;
        std::size_t scalar_samples = 0;
        auto emit = [&](const char* suite, const std::vector<InequalityReport>& reports) {
            for (const auto& rep : reports) {
                csv += std::string(suite) + "," + rep.id + "," + flag(rep.theorem_backed) + "," +
                       flag(rep.constant_free) + "," + std::to_string(rep.samples) + "," +
                       std::to_string(rep.skipped) + "," + num(rep.worst_ratio) + "," +
                       num(rep.empirical_constant) + "," + std::to_string(rep.violations) + "\n";
                for (const auto& [label, ratio] : rep.sub_constants) {
                    constants += rep.id + ",\"" + label + "\"," + num(ratio) + "\n";
                    r.put(rep.id + "[" + label + "]", ratio);
                }
                for (const auto& v : rep.reproductions) {
                    repro += rep.id + "," + std::to_string(v.seed) + "," + std::to_string(v.index) + ",\"" +
                             v.case_label + "\"," + num(v.lhs) + "," + num(v.rhs) + "\n";
                }
                r.put(rep.id + ".worst_ratio", rep.worst_ratio);
                r.put(rep.id + ".empirical_constant", rep.empirical_constant);
                r.put(rep.id + ".violations", rep.violations);
                if (suite == std::string("scalar")) {
                    scalar_samples += rep.samples;
                }
            }
        };
        emit("scalar", scalar);
        emit("functional", functional);

        const std::size_t violations = total_violations(scalar) + total_violations(functional);
        r.put("scalar_samples", scalar_samples);
        r.put("functional_fields", cfg.lemmas.samples);
        r.put("theorem_backed_violations", violations);
        write_text(out / "lemmas.csv", csv);
        write_text(out / "lemmas_constants.csv", constants);
        write_text(out / "lemmas_report.txt", r.str());
        if (violations > 0) {
            write_text(out / "violations.csv", repro);
            log << "lemmas: " << violations << " theorem-backed violations; reproduction data in "
                << (out / "violations.csv").string() << "\n";
            return static_cast<int>(kExitViolations);
        }
        log << "lemmas: " << scalar_samples << " scalar samples, " << cfg.lemmas.samples
            << " fields, no theorem-backed violations\n";
        return static_cast<int>(kExitOk);
    });
}

int run_sweep(const RunConfig& cfg, std::size_t threads, std::ostream& log) {
    return guarded(log, [&] {
        const fs::path out = prepare_output(cfg);
        const fs::path runs = out / "runs";
        make_dir(runs);

        std::vector<std::pair<double, double>> lattice;
        for (double a : cfg.sweep.alphas) {
            for (double b : cfg.sweep.betas) {
                lattice.emplace_back(a, b);
            }
        }
        std::vector<SweepRow> rows(lattice.size());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < lattice.size(); i = next++) {
                rows[i] = sweep_one(cfg, lattice[i].first, lattice[i].second, runs);
            }
        };
        const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(lattice.size(), 1));
        if (n_threads == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < n_threads; ++t) {
                pool.emplace_back(work);
            }
            for (auto& t : pool) {
                t.join();
            }
        }

        std::string csv = std::string(kSweepHeader) + "\n";
        std::size_t failed = 0;
        for (const auto& row : rows) {
            csv += sweep_line(row);
            if (!row.error.empty()) {
                ++failed;
                log << "sweep: (" << num(row.alpha) << ", " << num(row.beta) << ") failed: " << row.error << "\n";
            }
        }
        write_text(out / "sweep.csv", csv);
        log << "sweep: " << rows.size() << " runs, " << failed << " failed\n";
        return static_cast<int>(failed ? kExitSolver : kExitOk);
    });
}

int run_gevrey(const RunConfig& cfg, const fs::path& run_dir, std::ostream& log) {
    return guarded(log, [&] {
        const fs::path states_dir = run_dir / "states";
        if (!fs::is_directory(states_dir)) {
            throw IoError(states_dir.string() + " not found; run simulate with time.save_states = true");
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(states_dir)) {
            if (entry.path().extension() == ".aqgs") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw IoError("no .aqgs states in " + states_dir.string());
        }

        Trajectory traj;
        std::vector<double> times;
        DissipParams p;
        for (const auto& f : files) {
            Checkpoint cp = read_checkpoint(f);
            if (traj.empty()) {
                p = cp.params;
            } else {
                require_compatible(cp, traj.front().grid(), p);
            }
            times.push_back(cp.t);
            traj.push_back(std::move(cp.state));
        }
        const fs::path out = prepare_output(cfg);

        const auto weighted = weighted_norm_trace(traj, times, p, p.s);
        std::string csv = std::string(kGevreyHeader) + "\n";
        for (std::size_t j = 0; j < traj.size(); ++j) {
            std::string r1;
            std::string r2;
            if (j > 0) {
                const RadiusFit fit = analyticity_radius_fit(traj[j], traj[0], times[j] - times[0], p);
                r1 = rate_text(fit.axis1);
                r2 = rate_text(fit.axis2);
            }
            csv += num(times[j]) + "," + num(weighted[j].value) + "," + (weighted[j].saturated ? "1" : "0") + "," +
                   num(sobolev_norm(traj[j], 2.0)) + "," + r1 + "," + r2 + "\n";
        }
        write_text(out / "gevrey.csv", csv);

        Report r;
        r.put("states", traj.size());
        r.put("t_first", times.front());
        r.put("t_last", times.back());
        if (traj.size() >= 3) {
            const double t0 = cfg.gevrey.t0.value_or(times[traj.size() / 2]);
            try {
                const H2SmoothingReport h2 = h2_smoothing_check(traj, times, t0, p, p.s);
                r.put("h2.t0", h2.t0);
                r.put("h2.node", h2.node);
                r.put("h2.margin", h2.margin);
                r.put("h2.norm", h2.h2_norm);
                r.put("h2.weight_sup", h2.weight_sup);
                r.put("h2.weight_shape", h2.weight_shape);
                r.put("h2.weight_constant", h2.weight_constant);
                r.put("h2.continuity_modulus", h2.continuity_modulus);
            } catch (const std::invalid_argument& e) {
                r.put("h2.unavailable", e.what());
            }
        } else {
            r.put("h2.unavailable", "fewer than 3 stored states");
        }

        const double T0 = cfg.gevrey.T0.value_or(times.back() - times.front());
        const RemarkChainReport chain = remark_chain_check(p, T0, cfg.gevrey.t_samples,
                                                           std::numeric_limits<double>::infinity(), cfg.gevrey.kmax);
        r.put("chain.T0", chain.T0);
        r.put("chain.t_max", chain.t_max);
        r.put("chain.alpha_le_beta", chain.alpha_le_beta);
        auto link = [&](const std::string& key, const ChainLink& l) {
            r.put(key + ".name", l.name);
            r.put(key + ".samples", l.samples);
            r.put(key + ".violations", l.violations);
            r.put(key + ".min_slack", l.min_slack);
        };
        for (std::size_t i = 0; i < chain.scalar_links.size(); ++i) {
            link("chain.link" + std::to_string(i + 1), chain.scalar_links[i]);
        }
        link("chain.lower", chain.lower);
        link("chain.upper", chain.upper);
        r.put("chain.lower_needed", chain.lower_needed);
        r.put("chain.upper_needed", chain.upper_needed);
        write_text(out / "gevrey_report.txt", r.str());

        log << "gevrey: " << traj.size() << " states, exponential chain violations "
            << chain.exponential_violations() << "\n";
        return static_cast<int>(kExitOk);
    });
}

}  // namespace aqg::runner
