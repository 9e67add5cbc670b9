#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "aqg/ensemble.hpp"

namespace aqg::runner {

bool OutputSection::wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

namespace {

using json = nlohmann::json;

/// Reads the members of one JSON object, remembering which were used.
class Section {
  public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    std::string key(const std::string& name) const { return path_.empty() ? name : path_ + "." + name; }

    const json* find(const std::string& name) {
        seen_.insert(name);
        auto it = j_.find(name);
        return it == j_.end() || it->is_null() ? nullptr : &*it;
    }

    void number(const std::string& name, double& out) {
        if (const json* v = find(name)) {
            if (!v->is_number()) {
                throw ConfigError(key(name), "expected a number");
            }
            out = v->get<double>();
            if (!std::isfinite(out)) {
                throw ConfigError(key(name), "must be finite");
            }
        }
    }

    void number(const std::string& name, std::optional<double>& out) {
        if (find(name) != nullptr) {
            double v = 0.0;
            number(name, v);
            out = v;
        }
    }

    template <class Int>
    void integer(const std::string& name, Int& out) {
        if (const json* v = find(name)) {
            if (!v->is_number_integer()) {
                throw ConfigError(key(name), "expected an integer");
            }
            if constexpr (std::is_unsigned_v<Int>) {
                if (v->is_number_unsigned() || v->get<long long>() >= 0) {
                    out = v->get<Int>();
                    return;
                }
                throw ConfigError(key(name), "must be nonnegative");
            } else {
                out = v->get<Int>();
            }
        }
    }

    void boolean(const std::string& name, bool& out) {
        if (const json* v = find(name)) {
            if (!v->is_boolean()) {
                throw ConfigError(key(name), "expected true or false");
            }
            out = v->get<bool>();
        }
    }

    void string(const std::string& name, std::string& out) {
        if (const json* v = find(name)) {
            if (!v->is_string()) {
                throw ConfigError(key(name), "expected a string");
            }
            out = v->get<std::string>();
        }
    }

    void numbers(const std::string& name, std::vector<double>& out) {
        if (const json* v = find(name)) {
            if (!v->is_array()) {
                throw ConfigError(key(name), "expected an array of numbers");
            }
            out.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                if (!(*v)[i].is_number()) {
                    throw ConfigError(key(name) + "[" + std::to_string(i) + "]", "expected a number");
                }
                out.push_back((*v)[i].get<double>());
            }
        }
    }

    std::optional<Section> child(const std::string& name) {
        if (const json* v = find(name)) {
            return Section(*v, key(name));
        }
        return std::nullopt;
    }

    /// Throws for the first member that was never read.
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw ConfigError(key(it.key()), "unknown key");
            }
        }
    }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void parse_grid(Section& s, GridSpec& g) {
    s.integer("n1", g.n1);
    s.integer("n2", g.n2);
    s.finish();
}

void parse_params(Section& s, DissipParams& p) {
    s.number("alpha", p.alpha);
    s.number("beta", p.beta);
    s.number("mu", p.mu);
    s.number("nu", p.nu);
    s.number("s", p.s);
    s.finish();
}

void parse_init(Section& s, InitConfig& init) {
    std::string kind = "random";
    s.string("kind", kind);
    if (kind == "random") {
        init.kind = InitConfig::Kind::random;
    } else if (kind == "modes") {
        init.kind = InitConfig::Kind::modes;
    } else if (kind == "file") {
        init.kind = InitConfig::Kind::file;
    } else {
        throw ConfigError(s.key("kind"), "expected one of random, modes, file");
    }
    s.integer("seed", init.seed);
    s.number("spectrum_slope", init.spectrum_slope);
    s.number("amplitude", init.amplitude);
    s.integer("kmax", init.kmax);
    std::string path;
    s.string("path", path);
    init.path = path;
    if (const json* modes = s.find("modes")) {
        if (!modes->is_array()) {
            throw ConfigError(s.key("modes"), "expected an array of {k1, k2, amplitude, phase}");
        }
        init.modes.clear();
        for (std::size_t i = 0; i < modes->size(); ++i) {
            Section m((*modes)[i], s.key("modes") + "[" + std::to_string(i) + "]");
            SpectralField::SineMode mode;
            m.integer("k1", mode.k.k1);
            m.integer("k2", mode.k.k2);
            m.number("amplitude", mode.amplitude);
            m.number("phase", mode.phase);
            m.finish();
            init.modes.push_back(mode);
        }
    }
    s.finish();
}

void parse_time(Section& s, TimeConfig& t) {
    s.number("T", t.T);
    s.number("cfl", t.cfl);
    s.number("tol", t.tol);
    s.integer("trace_stride", t.trace_stride);
    s.numbers("checkpoint_times", t.checkpoint_times);
    s.boolean("disable_nonlinearity", t.disable_nonlinearity);
    s.boolean("save_states", t.save_states);
    s.finish();
}

void parse_picard(Section& s, PicardSection& p) {
    s.integer("n_nodes", p.n_nodes);
    s.integer("max_iter", p.max_iter);
    s.number("tol", p.tol);
    s.boolean("weighted", p.weighted);
    s.number("T", p.T);
    s.finish();
}

void parse_constants(Section& s, ConstantsSection& c) {
    std::string mode = "calibrate";
    s.string("mode", mode);
    if (mode == "calibrate") {
        c.mode = ConstantsSection::Mode::calibrate;
    } else if (mode == "explicit") {
        c.mode = ConstantsSection::Mode::explicit_values;
    } else {
        throw ConfigError(s.key("mode"), "expected calibrate or explicit");
    }
    s.number("C1", c.table.c1);
    s.number("C2", c.table.c2);
    s.number("C3", c.table.c3);
    s.number("C4", c.table.c4);
    s.integer("samples", c.samples);
    s.integer("seed", c.seed);
    s.finish();
}

void parse_lemmas(Section& s, LemmasSection& l) {
    s.integer("samples", l.samples);
    s.integer("grid_density", l.grid_density);
    s.integer("kmax", l.kmax);
    s.number("spectrum_slope", l.spectrum_slope);
    s.integer("seed", l.seed);
    s.integer("threads", l.threads);
    s.number("corrupt_factor", l.corrupt_factor);
    s.finish();
}

void parse_sweep(Section& s, SweepSection& w) {
    s.numbers("alphas", w.alphas);
    s.numbers("betas", w.betas);
    s.number("T", w.T);
    if (auto g = s.child("grid")) {
        parse_grid(*g, w.grid);
    }
    s.finish();
}

void parse_gevrey(Section& s, GevreySection& g) {
    s.number("t0", g.t0);
    s.number("T0", g.T0);
    s.integer("t_samples", g.t_samples);
    s.integer("kmax", g.kmax);
    s.finish();
}

void parse_output(Section& s, OutputSection& o) {
    std::string dir = o.directory.string();
    s.string("directory", dir);
    o.directory = dir;
    if (const json* f = s.find("formats")) {
        if (!f->is_array()) {
            throw ConfigError(s.key("formats"), "expected an array of strings");
        }
        o.formats.clear();
        for (std::size_t i = 0; i < f->size(); ++i) {
            if (!(*f)[i].is_string()) {
                throw ConfigError(s.key("formats") + "[" + std::to_string(i) + "]", "expected a string");
            }
            o.formats.push_back((*f)[i].get<std::string>());
        }
    }
    s.finish();
}

/// Runs a module precondition check and re-labels its failure with a key path.
template <class F>
void check(const std::string& path, F&& f) {
    try {
        f();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) {
        throw ConfigError(path, message);
    }
}

}  // namespace

void validate(const RunConfig& cfg) {
    require(cfg.grid.n1 % 2 == 0 && cfg.grid.n1 >= 8, "grid.n1", "must be even and at least 8");
    require(cfg.grid.n2 % 2 == 0 && cfg.grid.n2 >= 8, "grid.n2", "must be even and at least 8");

    const auto& p = cfg.params;
    require(p.alpha > 0.0 && p.alpha < 1.0, "params.alpha", "must lie in (0,1)");
    require(p.beta > 0.0 && p.beta < 1.0, "params.beta", "must lie in (0,1)");
    require(p.mu > 0.0, "params.mu", "must be positive");
    require(p.nu > 0.0, "params.nu", "must be positive");
    check("params", [&] { p.validate(); });

    const auto& init = cfg.init;
    require(init.spectrum_slope >= 0.0, "init.spectrum_slope", "must be nonnegative");
    require(init.amplitude >= 0.0, "init.amplitude", "must be nonnegative");
    require(init.kmax >= 0 && init.kmax <= cfg.grid.dealias_kmax(), "init.kmax",
            "must lie in [0, " + std::to_string(cfg.grid.dealias_kmax()) + "] (0 selects the full 2/3 band)");
    if (init.kind == InitConfig::Kind::modes) {
        require(!init.modes.empty(), "init.modes", "must list at least one mode");
        for (std::size_t i = 0; i < init.modes.size(); ++i) {
            const auto k = init.modes[i].k;
            const std::string path = "init.modes[" + std::to_string(i) + "]";
            require(!(k.k1 == 0 && k.k2 == 0), path, "the zero mode is not allowed (mean-zero data)");
            require(cfg.grid.dealias_retained(k), path, "wavenumber outside the 2/3 band of the grid");
        }
    }
    if (init.kind == InitConfig::Kind::file) {
        require(!init.path.empty(), "init.path", "required when init.kind is file");
    }

    const auto& t = cfg.time;
    require(t.T > 0.0, "time.T", "must be positive");
    require(t.cfl > 0.0, "time.cfl", "must be positive");
    require(t.tol > 0.0, "time.tol", "must be positive");
    require(t.trace_stride >= 1, "time.trace_stride", "must be at least 1");
    for (std::size_t i = 0; i < t.checkpoint_times.size(); ++i) {
        const double tc = t.checkpoint_times[i];
        require(tc > 0.0 && tc < t.T, "time.checkpoint_times[" + std::to_string(i) + "]", "must lie in (0, time.T)");
    }

    const auto& pc = cfg.picard;
    require(pc.n_nodes >= 2, "picard.n_nodes", "must be at least 2");
    require(pc.max_iter >= 1, "picard.max_iter", "must be at least 1");
    require(pc.tol > 0.0, "picard.tol", "must be positive");
    require(!pc.T || *pc.T > 0.0, "picard.T", "must be positive");

    const auto& c = cfg.constants;
    if (c.mode == ConstantsSection::Mode::explicit_values) {
        require(c.table.c1 > 0.0, "constants.C1", "must be positive");
        require(c.table.c2 > 0.0, "constants.C2", "must be positive");
        require(c.table.c3 > 0.0, "constants.C3", "must be positive");
        require(c.table.c4 > 0.0, "constants.C4", "must be positive");
    }
    require(c.samples >= 1, "constants.samples", "must be at least 1");

    const auto& l = cfg.lemmas;
    require(l.samples >= 1, "lemmas.samples", "must be at least 1");
    require(l.grid_density >= 1000, "lemmas.grid_density", "must be at least 1000");
    require(l.kmax >= 0 && l.kmax <= cfg.grid.dealias_kmax(), "lemmas.kmax",
            "must lie in [0, " + std::to_string(cfg.grid.dealias_kmax()) + "] (0 selects the full 2/3 band)");
    require(l.spectrum_slope >= 0.0, "lemmas.spectrum_slope", "must be nonnegative");
    require(l.threads >= 1, "lemmas.threads", "must be at least 1");
    require(l.corrupt_factor > 0.0, "lemmas.corrupt_factor", "must be positive");

    const auto& w = cfg.sweep;
    require(!w.alphas.empty(), "sweep.alphas", "must not be empty");
    require(!w.betas.empty(), "sweep.betas", "must not be empty");
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
        require(w.alphas[i] > 0.0 && w.alphas[i] < 1.0, "sweep.alphas[" + std::to_string(i) + "]",
                "must lie in (0,1)");
    }
    for (std::size_t i = 0; i < w.betas.size(); ++i) {
        require(w.betas[i] > 0.0 && w.betas[i] < 1.0, "sweep.betas[" + std::to_string(i) + "]", "must lie in (0,1)");
    }
    require(w.T > 0.0, "sweep.T", "must be positive");
    require(w.grid.n1 % 2 == 0 && w.grid.n1 >= 8, "sweep.grid.n1", "must be even and at least 8");
    require(w.grid.n2 % 2 == 0 && w.grid.n2 >= 8, "sweep.grid.n2", "must be even and at least 8");

    const auto& g = cfg.gevrey;
    require(!g.t0 || *g.t0 > 0.0, "gevrey.t0", "must be positive");
    require(!g.T0 || *g.T0 >= 0.0, "gevrey.T0", "must be nonnegative");
    require(g.t_samples >= 1, "gevrey.t_samples", "must be at least 1");
    require(g.kmax >= 1, "gevrey.kmax", "must be at least 1");

    require(!cfg.output.directory.empty(), "output.directory", "must not be empty");
    for (std::size_t i = 0; i < cfg.output.formats.size(); ++i) {
        const auto& f = cfg.output.formats[i];
        require(f == "csv" || f == "json", "output.formats[" + std::to_string(i) + "]", "expected csv or json");
    }
}

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    Section root(j, "");
    if (auto s = root.child("grid")) {
        parse_grid(*s, cfg.grid);
    }
    if (auto s = root.child("params")) {
        parse_params(*s, cfg.params);
    }
    if (auto s = root.child("init")) {
        parse_init(*s, cfg.init);
    }
    if (auto s = root.child("time")) {
        parse_time(*s, cfg.time);
    }
    if (auto s = root.child("picard")) {
        parse_picard(*s, cfg.picard);
    }
    if (auto s = root.child("constants")) {
        parse_constants(*s, cfg.constants);
    }
    if (auto s = root.child("lemmas")) {
        parse_lemmas(*s, cfg.lemmas);
    }
    if (auto s = root.child("sweep")) {
        parse_sweep(*s, cfg.sweep);
    }
    if (auto s = root.child("gevrey")) {
        parse_gevrey(*s, cfg.gevrey);
    }
    if (auto s = root.child("output")) {
        parse_output(*s, cfg.output);
    }
    root.finish();
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string(), "cannot open configuration file");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& cfg) {
    json modes = json::array();
    for (const auto& m : cfg.init.modes) {
        modes.push_back({{"k1", m.k.k1}, {"k2", m.k.k2}, {"amplitude", m.amplitude}, {"phase", m.phase}});
    }
    const char* kind = cfg.init.kind == InitConfig::Kind::random  ? "random"
                       : cfg.init.kind == InitConfig::Kind::modes ? "modes"
                                                                  : "file";
    json j;
    j["grid"] = {{"n1", cfg.grid.n1}, {"n2", cfg.grid.n2}};
    j["params"] = {{"alpha", cfg.params.alpha},
                   {"beta", cfg.params.beta},
                   {"mu", cfg.params.mu},
                   {"nu", cfg.params.nu},
                   {"s", cfg.params.s}};
    j["init"] = {{"kind", kind},
                 {"seed", cfg.init.seed},
                 {"spectrum_slope", cfg.init.spectrum_slope},
                 {"amplitude", cfg.init.amplitude},
                 {"kmax", cfg.init.kmax},
                 {"modes", modes},
                 {"path", cfg.init.path.string()}};
    j["time"] = {{"T", cfg.time.T},
                 {"cfl", cfg.time.cfl},
                 {"tol", cfg.time.tol},
                 {"trace_stride", cfg.time.trace_stride},
                 {"checkpoint_times", cfg.time.checkpoint_times},
                 {"disable_nonlinearity", cfg.time.disable_nonlinearity},
                 {"save_states", cfg.time.save_states}};
    j["picard"] = {{"n_nodes", cfg.picard.n_nodes},
                   {"max_iter", cfg.picard.max_iter},
                   {"tol", cfg.picard.tol},
                   {"weighted", cfg.picard.weighted},
                   {"T", cfg.picard.T ? json(*cfg.picard.T) : json(nullptr)}};
    j["constants"] = {{"mode", cfg.constants.mode == ConstantsSection::Mode::calibrate ? "calibrate" : "explicit"},
                      {"C1", cfg.constants.table.c1},
                      {"C2", cfg.constants.table.c2},
                      {"C3", cfg.constants.table.c3},
                      {"C4", cfg.constants.table.c4},
                      {"samples", cfg.constants.samples},
                      {"seed", cfg.constants.seed}};
    j["lemmas"] = {{"samples", cfg.lemmas.samples},
                   {"grid_density", cfg.lemmas.grid_density},
                   {"kmax", cfg.lemmas.kmax},
                   {"spectrum_slope", cfg.lemmas.spectrum_slope},
                   {"seed", cfg.lemmas.seed},
                   {"threads", cfg.lemmas.threads},
                   {"corrupt_factor", cfg.lemmas.corrupt_factor}};
    j["sweep"] = {{"alphas", cfg.sweep.alphas},
                  {"betas", cfg.sweep.betas},
                  {"T", cfg.sweep.T},
                  {"grid", {{"n1", cfg.sweep.grid.n1}, {"n2", cfg.sweep.grid.n2}}}};
    j["gevrey"] = {{"t0", cfg.gevrey.t0 ? json(*cfg.gevrey.t0) : json(nullptr)},
                   {"T0", cfg.gevrey.T0 ? json(*cfg.gevrey.T0) : json(nullptr)},
                   {"t_samples", cfg.gevrey.t_samples},
                   {"kmax", cfg.gevrey.kmax}};
    j["output"] = {{"directory", cfg.output.directory.string()}, {"formats", cfg.output.formats}};
    return j;
}

}  // namespace aqg::runner
