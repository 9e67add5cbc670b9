#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aqg/existence.hpp"
#include "aqg/grid.hpp"
#include "aqg/params.hpp"
#include "aqg/spectral_field.hpp"

namespace aqg::runner {

/// Rejected configuration; path is the dotted key, e.g. "params.alpha".
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

struct InitConfig {
    enum class Kind { random, modes, file };
    Kind kind = Kind::random;
    std::uint64_t seed = 1;
    double spectrum_slope = 1.5;
    /// Random data: target H^s norm. Modes: scale applied to every listed amplitude.
    double amplitude = 1.0;
    /// Random data band limit; 0 means the full 2/3 band.
    int kmax = 0;
    std::vector<SpectralField::SineMode> modes;
    std::filesystem::path path;
};

struct TimeConfig {
    double T = 1.0;
    double cfl = 0.5;
    double tol = 1e-7;
    std::size_t trace_stride = 10;
    std::vector<double> checkpoint_times;
    bool disable_nonlinearity = false;
    bool save_states = false;
};

struct PicardSection {
    std::size_t n_nodes = 32;
    std::size_t max_iter = 50;
    double tol = 1e-10;
    bool weighted = true;
    /// Horizon override; by default the existence time is used.
    std::optional<double> T;
};

struct ConstantsSection {
    enum class Mode { calibrate, explicit_values };
    Mode mode = Mode::calibrate;
    ConstantsTable table;
    std::size_t samples = 16;
    std::uint64_t seed = 7;
};

struct LemmasSection {
    std::size_t samples = 1000;
    std::size_t grid_density = 1000;
    int kmax = 0;
    double spectrum_slope = 1.5;
    std::uint64_t seed = 2024;
    std::size_t threads = 1;
    /// Test hook for the fault-injection path; 1 leaves the norms intact.
    double corrupt_factor = 1.0;
};

struct SweepSection {
    std::vector<double> alphas = {0.6, 0.75, 0.9};
    std::vector<double> betas = {0.6, 0.75, 0.9};
    double T = 0.05;
    GridSpec grid{32, 32};
};

struct GevreySection {
    /// Interior time for the H^2 check; defaults to the middle stored node.
    std::optional<double> t0;
    /// Remark-chain horizon; defaults to the trajectory span.
    std::optional<double> T0;
    std::size_t t_samples = 16;
    int kmax = 128;
};

struct OutputSection {
    std::filesystem::path directory = "aqg_out";
    std::vector<std::string> formats = {"csv"};

    bool wants(const std::string& format) const;
};

struct RunConfig {
    GridSpec grid{64, 64};
    DissipParams params;
    InitConfig init;
    TimeConfig time;
    PicardSection picard;
    ConstantsSection constants;
    LemmasSection lemmas;
    SweepSection sweep;
    GevreySection gevrey;
    OutputSection output;
};

/// Parses and validates every section; unknown keys are errors.
RunConfig parse_config(const nlohmann::json& j);

/// Reads a JSON file. Throws ConfigError with path "<file>" if it cannot be read or parsed.
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration, defaults included.
nlohmann::json to_json(const RunConfig& cfg);

/// Re-runs the cross-field checks (after command-line overrides).
void validate(const RunConfig& cfg);

}  // namespace aqg::runner
