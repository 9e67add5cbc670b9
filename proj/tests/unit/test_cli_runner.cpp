#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"

namespace fs = std::filesystem;
using namespace aqg;
using namespace aqg::runner;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("aqg_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

std::vector<std::string> lines(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::map<std::string, std::string> key_values(const fs::path& path) {
    std::map<std::string, std::string> out;
    for (const auto& line : lines(path)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) {
            out[line.substr(0, eq)] = line.substr(eq + 3);
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) {
        out.push_back(item);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

/// Runs the installed binary; returns its exit status, with stderr captured into `err`.
int cli(const std::string& args, std::string* err = nullptr) {
    const fs::path log = fs::temp_directory_path() / "aqg_cli_stderr.txt";
    const std::string cmd = std::string(AQG_CLI_PATH) + " " + args + " >/dev/null 2>" + log.string();
    const int status = std::system(cmd.c_str());
    if (err) {
        *err = slurp(log);
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const json& j) {
    const fs::path path = dir / "config_in.json";
    std::ofstream(path) << j.dump(2);
    return path;
}

/// Tiny deterministic simulate configuration.
json small_simulate(const fs::path& out) {
    return {{"grid", {{"n1", 16}, {"n2", 16}}},
            {"params", {{"alpha", 0.75}, {"beta", 0.8}, {"s", 1.0}}},
            {"init", {{"kind", "random"}, {"seed", 9}, {"amplitude", 0.5}, {"kmax", 4}}},
            {"time", {{"T", 0.05}, {"trace_stride", 2}, {"checkpoint_times", {0.02}}, {"save_states", true}}},
            {"output", {{"directory", out.string()}, {"formats", {"csv", "json"}}}}};
}

std::string error_path(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<accepted>";
}

}  // namespace

TEST(ConfigTest, InvalidAlphaNamesKeyPath) {
    EXPECT_EQ(error_path({{"params", {{"alpha", 1.5}}}}), "params.alpha");
    EXPECT_EQ(error_path({{"params", {{"nu", 0.0}}}}), "params.nu");
    EXPECT_EQ(error_path({{"grid", {{"n1", 7}}}}), "grid.n1");
}

TEST(ConfigTest, UnknownAndMistypedKeysRejected) {
    EXPECT_EQ(error_path({{"time", {{"TT", 1.0}}}}), "time.TT");
    EXPECT_EQ(error_path({{"colour", 1}}), "colour");
    EXPECT_EQ(error_path({{"grid", {{"n1", "x"}}}}), "grid.n1");
    EXPECT_EQ(error_path({{"init", {{"modes", {{{"k1", 1}, {"k3", 2}}}}}}}), "init.modes[0].k3");
}

TEST(ConfigTest, RangeChecksNameKeyPath) {
    EXPECT_EQ(error_path({{"time", {{"T", 1.0}, {"checkpoint_times", {0.5, 2.0}}}}}), "time.checkpoint_times[1]");
    EXPECT_EQ(error_path({{"lemmas", {{"grid_density", 10}}}}), "lemmas.grid_density");
    EXPECT_EQ(error_path({{"sweep", {{"alphas", {0.5, 1.0}}}}}), "sweep.alphas[1]");
    EXPECT_EQ(error_path({{"output", {{"formats", {"xml"}}}}}), "output.formats[0]");
    EXPECT_EQ(error_path({{"init", {{"kmax", 40}}}}), "init.kmax");
    EXPECT_EQ(error_path({{"constants", {{"mode", "explicit"}, {"C3", -1.0}}}}), "constants.C3");
    EXPECT_EQ(error_path({{"init", {{"kind", "modes"}, {"modes", {{{"k1", 30}, {"k2", 0}}}}}}}), "init.modes[0]");
}

TEST(ConfigTest, ResolvedConfigRoundTrips) {
    const RunConfig cfg = parse_config(small_simulate("x"));
    const json echoed = to_json(cfg);
    EXPECT_EQ(to_json(parse_config(echoed)), echoed);
    EXPECT_EQ(echoed["grid"]["n1"], 16);
    EXPECT_EQ(echoed["time"]["checkpoint_times"][0], 0.02);
}

TEST(CliTest, InvalidAlphaExitsOneBeforeCompute) {
    const fs::path dir = scratch("bad_alpha");
    json j = small_simulate(dir / "out");
    j["params"]["alpha"] = 1.5;
    std::string err;
    EXPECT_EQ(cli("simulate --config " + write_config(dir, j).string(), &err), 1);
    EXPECT_NE(err.find("params.alpha"), std::string::npos) << err;
    EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(CliTest, MalformedJsonAndMissingFilesExitOne) {
    const fs::path dir = scratch("bad_json");
    std::ofstream(dir / "broken.json") << "{\"grid\": ";
    EXPECT_EQ(cli("simulate --config " + (dir / "broken.json").string()), 1);
    EXPECT_EQ(cli("picard --config " + (dir / "absent.json").string()), 1);
    EXPECT_EQ(cli("nonsense"), 1);
}

TEST(SimulateTest, GoldenHeadersAndOutputs) {
    const fs::path out = scratch("simulate") / "out";
    ASSERT_EQ(run_simulate(parse_config(small_simulate(out)), std::cerr), 0);
    EXPECT_EQ(first_line(out / "trace.csv"), "t,l2,hs,h2,gevrey_hs,diss1,diss2,max_u,dt");
    EXPECT_TRUE(fs::exists(out / "config.json"));
    EXPECT_TRUE(fs::exists(out / "trace.json"));
    EXPECT_TRUE(fs::exists(out / "checkpoints" / "checkpoint_000.aqgs"));
    EXPECT_TRUE(fs::exists(out / "final.aqgs"));
    EXPECT_EQ(parse_config(json::parse(slurp(out / "config.json"))).init.seed, 9u);

    const auto rows = lines(out / "trace.csv");
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(std::stod(split(rows.back())[0]), 0.05);
    std::size_t states = 0;
    for (const auto& e : fs::directory_iterator(out / "states")) {
        states += e.path().extension() == ".aqgs";
    }
    EXPECT_EQ(states, rows.size() - 1);
}

TEST(SimulateTest, RerunIsBitIdentical) {
    const fs::path dir = scratch("rerun");
    const fs::path cfg = write_config(dir, small_simulate(dir / "unused"));
    ASSERT_EQ(cli("simulate --config " + cfg.string() + " --out " + (dir / "a").string()), 0);
    ASSERT_EQ(cli("simulate --config " + cfg.string() + " --out " + (dir / "b").string()), 0);
    EXPECT_EQ(slurp(dir / "a" / "trace.csv"), slurp(dir / "b" / "trace.csv"));
    EXPECT_EQ(slurp(dir / "a" / "final.aqgs"), slurp(dir / "b" / "final.aqgs"));

    ASSERT_EQ(cli("simulate --config " + cfg.string() + " --seed 10 --out " + (dir / "c").string()), 0);
    EXPECT_NE(slurp(dir / "a" / "trace.csv"), slurp(dir / "c" / "trace.csv"));
}

TEST(SimulateTest, LinearFlagMatchesClosedFormDecay) {
    const fs::path out = scratch("linear") / "out";
    json j = small_simulate(out);
    j["init"] = {{"kind", "modes"}, {"modes", {{{"k1", 2}, {"k2", 3}, {"amplitude", 0.7}}}}};
    j["time"] = {{"T", 0.3}, {"trace_stride", 1}, {"disable_nonlinearity", true}};
    const RunConfig cfg = parse_config(j);
    ASSERT_EQ(run_simulate(cfg, std::cerr), 0);

    const double A = std::pow(2.0, 1.5) + std::pow(3.0, 1.6);
    const auto rows = lines(out / "trace.csv");
    ASSERT_GE(rows.size(), 3u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        const double t = std::stod(f[0]);
        const double l2 = 0.7 / std::sqrt(2.0) * std::exp(-t * A);
        EXPECT_NEAR(std::stod(f[1]) / l2, 1.0, 1e-12) << rows[i];
        // |u| = |theta| pointwise for one mode; the peak of sin(2x1 + 3x2) lies on the 16^2 grid.
        EXPECT_NEAR(std::stod(f[7]) / (0.7 * std::exp(-t * A)), 1.0, 1e-12) << rows[i];
    }
}

TEST(SimulateTest, ResumeFromCheckpointFile) {
    const fs::path dir = scratch("resume");
    const fs::path first = dir / "first";
    ASSERT_EQ(run_simulate(parse_config(small_simulate(first)), std::cerr), 0);

    json j = small_simulate(dir / "second");
    j["init"] = {{"kind", "file"}, {"path", (first / "final.aqgs").string()}};
    ASSERT_EQ(run_simulate(parse_config(j), std::cerr), 0);
    j["grid"] = {{"n1", 32}, {"n2", 32}};
    EXPECT_EQ(run_simulate(parse_config(j), std::cerr), 1);
}

TEST(PicardTest, ZeroDataConvergesWithoutIterations) {
    const fs::path out = scratch("picard_zero") / "out";
    json j = small_simulate(out);
    j["init"] = {{"kind", "modes"}, {"amplitude", 0.0}, {"modes", {{{"k1", 1}, {"k2", 0}}}}};
    j["picard"] = {{"n_nodes", 8}};
    j["constants"] = {{"mode", "explicit"}, {"C1", 1.0}, {"C2", 1.0}, {"C3", 1.0}, {"C4", 1.0}};
    ASSERT_EQ(run_picard(parse_config(j), std::cerr), 0);
    auto kv = key_values(out / "picard_report.txt");
    EXPECT_EQ(kv["plain.converged"], "true");
    EXPECT_EQ(kv["plain.iterations"], "0");
    EXPECT_EQ(kv["T0"], "inf");
}

TEST(PicardTest, SingleModeAndWeightedHorizon) {
    const fs::path out = scratch("picard_mode") / "out";
    json j = small_simulate(out);
    j["init"] = {{"kind", "modes"}, {"modes", {{{"k1", 1}, {"k2", 2}, {"amplitude", 0.3}}}}};
    j["picard"] = {{"n_nodes", 16}, {"weighted", true}};
    j["constants"] = {{"samples", 4}};
    ASSERT_EQ(run_picard(parse_config(j), std::cerr), 0);
    auto kv = key_values(out / "picard_report.txt");
    const auto d = split(kv["plain.distances"]);
    ASSERT_FALSE(d.empty());
    EXPECT_LT(std::stod(d[0]), 1e-12);
    EXPECT_EQ(kv["plain.converged"], "true");
    EXPECT_LT(std::stod(kv["T1"]), std::log(1.5));
    EXPECT_EQ(kv["weighted.weighted_ball_ok"], "true");
    EXPECT_EQ(kv["regime"], "guaranteed");
}

TEST(LemmasTest, CleanRunExitsZeroWithIsometryConstant) {
    const fs::path out = scratch("lemmas") / "out";
    const json j = {{"grid", {{"n1", 32}, {"n2", 32}}},
                    {"lemmas", {{"samples", 12}, {"kmax", 6}, {"threads", 2}}},
                    {"output", {{"directory", out.string()}}}};
    ASSERT_EQ(run_lemmas(parse_config(j), std::cerr), 0);
    EXPECT_EQ(first_line(out / "lemmas.csv"),
              "suite,id,theorem_backed,constant_free,samples,skipped,worst_ratio,empirical_constant,violations");
    auto kv = key_values(out / "lemmas_report.txt");
    EXPECT_NEAR(std::stod(kv["calderon_zygmund[p=2]"]), 1.0, 1e-12);
    EXPECT_EQ(kv["theorem_backed_violations"], "0");
    EXPECT_FALSE(fs::exists(out / "violations.csv"));
}

TEST(LemmasTest, CorruptedNormExitsFourWithReproductions) {
    const fs::path dir = scratch("lemmas_corrupt");
    const std::string config = std::string(AQG_CONFIG_DIR) + "/lemmas_corrupt.json";
    EXPECT_EQ(cli("lemmas --config " + config + " --out " + (dir / "out").string()), 4);
    const auto rows = lines(dir / "out" / "violations.csv");
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows[0], "id,seed,index,case,lhs,rhs");
}

TEST(SweepTest, RegionLabelsAndDeterministicRows) {
    const fs::path dir = scratch("sweep");
    json j = {{"init", {{"seed", 5}, {"amplitude", 0.5}, {"kmax", 5}}},
              {"constants", {{"samples", 2}}},
              {"sweep", {{"alphas", {0.6, 0.75, 0.9}}, {"betas", {0.6, 0.75, 0.9}}, {"T", 0.01},
                         {"grid", {{"n1", 16}, {"n2", 16}}}}},
              {"output", {{"directory", (dir / "a").string()}}}};
    ASSERT_EQ(run_sweep(parse_config(j), 3, std::cerr), 0);
    j["output"]["directory"] = (dir / "b").string();
    ASSERT_EQ(run_sweep(parse_config(j), 1, std::cerr), 0);
    EXPECT_EQ(slurp(dir / "a" / "sweep.csv"), slurp(dir / "b" / "sweep.csv"));

    const auto rows = lines(dir / "a" / "sweep.csv");
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], "alpha,beta,region,T0,hs_growth,rate1,rate2");
    EXPECT_EQ(split(rows[1])[0], "0.59999999999999998");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        ASSERT_EQ(f.size(), 7u) << rows[i];
        EXPECT_EQ(f[2], "Y1");
        EXPECT_GT(std::stod(f[3]), 0.0);
        EXPECT_LT(std::stod(f[4]), 1.0);
    }
    EXPECT_TRUE(fs::exists(dir / "a" / "runs" / "a0.6_b0.75" / "trace.csv"));
}

TEST(SweepTest, OutsidePointStillRuns) {
    const fs::path dir = scratch("sweep_outside");
    const json j = {{"init", {{"kmax", 4}}},
                    {"constants", {{"samples", 2}}},
                    {"sweep", {{"alphas", {0.4}}, {"betas", {0.5}}, {"T", 0.01}, {"grid", {{"n1", 16}, {"n2", 16}}}}},
                    {"output", {{"directory", dir.string()}}}};
    run_sweep(parse_config(j), 1, std::cerr);
    const auto rows = lines(dir / "sweep.csv");
    ASSERT_EQ(rows.size(), 2u);
    const auto f = split(rows[1]);
    ASSERT_EQ(f.size(), 7u) << rows[1];
    EXPECT_EQ(f[2], "outside");
}

TEST(GevreyTest, ReadsSimulateStates) {
    const fs::path dir = scratch("gevrey");
    ASSERT_EQ(run_simulate(parse_config(small_simulate(dir / "run")), std::cerr), 0);
    ASSERT_EQ(cli("gevrey " + (dir / "run").string() + " --out " + (dir / "g").string()), 0);
    EXPECT_EQ(first_line(dir / "g" / "gevrey.csv"), "t,weighted_hs,saturated,h2,rate1,rate2");
    const auto rows = lines(dir / "g" / "gevrey.csv");
    EXPECT_EQ(rows.size(), lines(dir / "run" / "trace.csv").size());
    auto kv = key_values(dir / "g" / "gevrey_report.txt");
    EXPECT_EQ(kv["chain.lower.violations"], "0");
    EXPECT_EQ(kv["chain.upper.violations"], "0");
    EXPECT_TRUE(kv.count("h2.norm"));

    EXPECT_EQ(cli("gevrey " + (dir / "missing").string()), 3);
}
