#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "runner/commands.hpp"
#include "runner/config.hpp"

namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 1;
    std::string run_dir;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON configuration file (defaults apply when omitted)");
    cmd->add_option("--out", o.out, "output directory (overrides output.directory)");
    cmd->add_option("--seed", o.seed, "overrides init.seed and lemmas.seed");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace aqg::runner;

    CLI::App app{"Pseudospectral solver and verification suite for the anisotropic quasi-geostrophic equation"};
    app.require_subcommand(1);
    Options o;

    auto* simulate = app.add_subcommand("simulate", "time-march and write diagnostics, checkpoints and states");
    auto* picard = app.add_subcommand("picard", "existence times and plain/weighted Picard iteration");
    auto* lemmas = app.add_subcommand("lemmas", "scalar and functional inequality suites");
    auto* sweep = app.add_subcommand("sweep", "independent short runs over an (alpha, beta) lattice");
    auto* gevrey = app.add_subcommand("gevrey", "Gevrey diagnostics on a simulate output directory");
    for (auto* cmd : {simulate, picard, lemmas, sweep, gevrey}) {
        add_common(cmd, o);
    }
    sweep->add_option("--threads", o.threads, "concurrent sweep runs")->check(CLI::PositiveNumber);
    gevrey->add_option("dir", o.run_dir, "directory written by simulate with time.save_states")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    RunConfig cfg;
    try {
        if (!o.config.empty()) {
            cfg = load_config(o.config);
        }
        if (!o.out.empty()) {
            cfg.output.directory = o.out;
        } else if (gevrey->parsed() && o.config.empty()) {
            cfg.output.directory = o.run_dir;
        }
        if (o.seed) {
            cfg.init.seed = *o.seed;
            cfg.lemmas.seed = *o.seed;
        }
        validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    if (simulate->parsed()) {
        return run_simulate(cfg, std::cerr);
    }
    if (picard->parsed()) {
        return run_picard(cfg, std::cerr);
    }
    if (lemmas->parsed()) {
        return run_lemmas(cfg, std::cerr);
    }
    if (sweep->parsed()) {
        return run_sweep(cfg, o.threads, std::cerr);
    }
    return run_gevrey(cfg, o.run_dir, std::cerr);
}
