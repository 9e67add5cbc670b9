#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "config.hpp"

namespace aqg::runner {

/// Process exit status of every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitSolver = 2,
    kExitIo = 3,
    kExitViolations = 4,
};

/// File could not be created, written or read.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Initial state on an arbitrary grid (the sweep uses its own grid).
/// Random data is rescaled to H^s norm init.amplitude.
SpectralField initial_field(const RunConfig& cfg, const GridSpec& grid);

/// Stable CSV headers.
inline constexpr const char* kTraceHeader = "t,l2,hs,h2,gevrey_hs,diss1,diss2,max_u,dt";
inline constexpr const char* kSweepHeader = "alpha,beta,region,T0,hs_growth,rate1,rate2";
inline constexpr const char* kGevreyHeader = "t,weighted_hs,saturated,h2,rate1,rate2";
inline constexpr const char* kLemmasHeader =
    "suite,id,theorem_backed,constant_free,samples,skipped,worst_ratio,empirical_constant,violations";

/// Each command writes into cfg.output.directory and logs progress to `log`.
int run_simulate(const RunConfig& cfg, std::ostream& log);
int run_picard(const RunConfig& cfg, std::ostream& log);
int run_lemmas(const RunConfig& cfg, std::ostream& log);
int run_sweep(const RunConfig& cfg, std::size_t threads, std::ostream& log);
/// Reads states/*.aqgs from a simulate output directory.
int run_gevrey(const RunConfig& cfg, const std::filesystem::path& run_dir, std::ostream& log);

}  // namespace aqg::runner
