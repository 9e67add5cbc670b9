#include "aqg/lemmas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "aqg/norms.hpp"
#include "aqg/spectral_ops.hpp"
#include "aqg/transform.hpp"

namespace aqg {
namespace {

/// Running max of LHS/RHS for one report.
class Accumulator {
public:
    Accumulator(std::string id, bool theorem_backed, bool constant_free, std::uint64_t seed = 0)
        : seed_(seed) {
        report_.id = std::move(id);
        report_.theorem_backed = theorem_backed;
        report_.constant_free = constant_free;
    }

    /// Records one evaluation; `limit` is the ratio above which it counts as a violation.
    void add(const std::string& label, std::size_t index, double lhs, double rhs, double limit) {
        ++report_.samples;
        double ratio = 0.0;
        if (rhs > 0.0) {
            ratio = lhs / rhs;
        } else if (lhs > 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        }
        bool bad = !std::isfinite(ratio) || ratio > limit * (1.0 + kRatioSlack);
        if (std::isnan(lhs) || std::isnan(rhs)) {
            bad = true;
        }
        if (bad) {
            flag(label, index, lhs, rhs);
        }
        report_.worst_ratio = std::max(report_.worst_ratio, ratio);
        bump(label, ratio);
    }

    void flag(const std::string& label, std::size_t index, double lhs, double rhs) {
        ++report_.violations;
        if (report_.reproductions.size() < kMaxViolationRecords) {
            report_.reproductions.push_back({seed_, index, label, lhs, rhs});
        }
    }

    void bump(const std::string& label, double ratio) {
        if (last_ < report_.sub_constants.size() && report_.sub_constants[last_].first == label) {
            report_.sub_constants[last_].second = std::max(report_.sub_constants[last_].second, ratio);
            return;
        }
        for (std::size_t i = 0; i < report_.sub_constants.size(); ++i) {
            if (report_.sub_constants[i].first == label) {
                report_.sub_constants[i].second = std::max(report_.sub_constants[i].second, ratio);
                last_ = i;
                return;
            }
        }
        report_.sub_constants.emplace_back(label, ratio);
        last_ = report_.sub_constants.size() - 1;
    }

    void skip(std::size_t n = 1) { report_.skipped += n; }
    InequalityReport& report() { return report_; }

    InequalityReport finish() {
        report_.empirical_constant = report_.worst_ratio;
        return std::move(report_);
    }

private:
    InequalityReport report_;
    std::uint64_t seed_;
    std::size_t last_ = 0;
};

/// Deterministic uniform draw in [0, 1) for scan `stream`, sample `i`, slot `j`.
double draw(std::uint64_t stream, std::size_t i, int j) {
    return unit_interval(mix_seed(mix_seed(stream * 0x9E3779B97F4A7C15ull + i) + static_cast<std::uint64_t>(j)));
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

/// Golden-section maximization of a unimodal function on [a, b].
template <class F>
double golden_max(F f, double a, double b) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

}  // namespace

std::vector<InequalityReport> scalar_inequality_suite(const DissipParams& p, std::size_t grid_density) {
    p.validate();
    if (grid_density < kMinGridDensity) {
        throw std::invalid_argument("scalar_inequality_suite: grid_density must be at least 1000");
    }
    DissipParams unit = p;
    unit.mu = 1.0;
    unit.nu = 1.0;

    std::vector<InequalityReport> out;
    const std::size_t pair_samples = 250 * grid_density;

    {
        Accumulator acc("subadditivity", true, true);
        const std::array<double, 4> exponents = {p.alpha, p.beta, 0.5, 1.0};
        for (std::size_t e = 0; e < exponents.size(); ++e) {
            const double r = exponents[e];
            const std::string label = "r=" + fmt(r);
            for (std::size_t i = 0; i < pair_samples; ++i) {
                const double scale = std::pow(10.0, -2.0 + 4.0 * draw(e + 1, i, 0));
                const double x1 = scale * (2.0 * draw(e + 1, i, 1) - 1.0);
                const double x2 = scale * (2.0 * draw(e + 1, i, 2) - 1.0);
                const double y1 = scale * (2.0 * draw(e + 1, i, 3) - 1.0);
                const double y2 = scale * (2.0 * draw(e + 1, i, 4) - 1.0);
                const double lhs = std::pow(std::hypot(x1, x2), r);
                const double rhs = std::pow(std::hypot(x1 - y1, x2 - y2), r) + std::pow(std::hypot(y1, y2), r);
                acc.add(label, i, lhs, rhs, 1.0);
            }
        }
        out.push_back(acc.finish());
    }

    {
        Accumulator acc("gevrey_symbol_subadditivity", true, true);
        for (std::size_t i = 0; i < pair_samples; ++i) {
            auto lattice = [&](int j) { return static_cast<int>(std::floor(513.0 * draw(11, i, j))) - 256; };
            const Wavenumber xi{lattice(0), lattice(1)};
            const Wavenumber eta{lattice(2), lattice(3)};
            const Wavenumber diff{xi.k1 - eta.k1, xi.k2 - eta.k2};
            acc.add("B(k) <= B(k-l) + B(l)", i, gevrey_symbol(xi, p),
                    gevrey_symbol(diff, p) + gevrey_symbol(eta, p), 1.0);
        }
        out.push_back(acc.finish());
    }

    {
        Accumulator acc("exponential_bound", true, true);
        const std::array<double, 4> exponents = {p.alpha, p.beta, 0.5, 1.0};
        const std::array<double, 3> rates = {0.5, 1.0, 2.0};
        for (double a : exponents) {
            for (double r : rates) {
                const std::string label = "a=" + fmt(a) + ",r=" + fmt(r);
                const double bound = std::pow(a / r, a);
                const double x_hi = 20.0 * a / r;
                auto f = [&](double x) { return std::pow(x, a) * std::exp(-r * x); };
                double best = 0.0;
                std::size_t best_j = 1;
                for (std::size_t j = 1; j <= grid_density; ++j) {
                    const double x = x_hi * static_cast<double>(j) / static_cast<double>(grid_density);
                    const double v = f(x);
                    acc.add(label, j, v, bound, 1.0);
                    if (v > best) {
                        best = v;
                        best_j = j;
                    }
                }
                const double h = x_hi / static_cast<double>(grid_density);
                const double peak =
                    golden_max(f, h * static_cast<double>(best_j - 1), h * static_cast<double>(best_j + 1));
                acc.add(label, 0, peak, bound, 1.0);
            }
        }
        out.push_back(acc.finish());
    }

    const int half = static_cast<int>(grid_density / 2);
    {
        Accumulator acc("multiplier_equivalence", true, true);
        for (double e : {p.alpha, p.beta}) {
            const double upper = std::pow(2.0, 1.0 - e);
            const std::string label = "a=" + fmt(e);
            std::size_t index = 0;
            double low = std::numeric_limits<double>::infinity();
            for (int k1 = -half; k1 <= half; ++k1) {
                for (int k2 = -half; k2 <= half; ++k2, ++index) {
                    if (k1 == 0 && k2 == 0) {
                        continue;
                    }
                    const double a1 = std::pow(std::abs(static_cast<double>(k1)), 2.0 * e);
                    const double a2 = std::pow(std::abs(static_cast<double>(k2)), 2.0 * e);
                    const double iso = std::pow(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2, e);
                    const double ratio = (a1 + a2) / iso;
                    low = std::min(low, ratio);
                    // Upper side: ratio <= 2^{1-a}, reported as ratio / 2^{1-a} <= 1.
                    acc.add(label, index, a1 + a2, upper * iso, 1.0);
                    // Lower side: ratio >= 1.
                    if (ratio < 1.0 - kRatioSlack) {
                        acc.flag(label + " lower", index, a1 + a2, iso);
                    }
                }
            }
            acc.report().sub_constants.emplace_back(label + " min ratio", low);
        }
        out.push_back(acc.finish());
    }

    {
        Accumulator acc("dissipation_minus_gevrey", true, true);
        double identity_residual = 0.0;
        std::size_t index = 0;
        for (int k1 = -half; k1 <= half; ++k1) {
            for (int k2 = -half; k2 <= half; ++k2, ++index) {
                const Wavenumber k{k1, k2};
                const double diff = dissipation_symbol(k, unit) - gevrey_symbol(k, unit);
                const double x = std::pow(std::abs(static_cast<double>(k1)), p.alpha) - 1.0;
                const double y = std::pow(std::abs(static_cast<double>(k2)), p.beta) - 1.0;
                const double squares = x * x + y * y - 2.0;
                identity_residual = std::max(identity_residual, std::abs(diff - squares) / std::max(1.0, std::abs(diff)));
                // -(A - B) / 2 <= 1.
                acc.add("A-B >= -2", index, -diff, 2.0, 1.0);
            }
        }
        acc.report().sub_constants.emplace_back("identity residual", identity_residual);
        out.push_back(acc.finish());
    }

    {
        Accumulator acc("weight_domination", true, true);
        const double t_max = std::log(1.5);
        const std::size_t n = 1000 * grid_density;
        for (std::size_t i = 0; i < n; ++i) {
            const int k1 = static_cast<int>(std::floor(1025.0 * draw(21, i, 0))) - 512;
            const int k2 = static_cast<int>(std::floor(1025.0 * draw(21, i, 1))) - 512;
            const double t = t_max * draw(21, i, 2);
            const Wavenumber k{k1, k2};
            const double exponent = 0.5 * t * gevrey_symbol(k, unit) - t * dissipation_symbol(k, unit);
            acc.add("exp((t/2)B - tA) <= exp(t)", i, std::exp(exponent), std::exp(t), 1.0);
        }
        out.push_back(acc.finish());
    }
    return out;
}

SpectralField oversampled_product(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument("oversampled_product: grid mismatch");
    }
    const GridSpec fine{2 * f.grid().n1, 2 * f.grid().n2};
    const auto vf = to_physical(resample(f, fine));
    const auto vg = to_physical(resample(g, fine));
    std::vector<double> prod(vf.size());
    for (std::size_t i = 0; i < vf.size(); ++i) {
        prod[i] = vf[i] * vg[i];
    }
    return to_spectral(fine, prod);
}

namespace {

double product_lhs(const SpectralField& fg, double s1, double s2) { return sobolev_norm(fg, s1 + s2 - 1.0, true); }

double product_rhs(const SpectralField& f, const SpectralField& g, double s1, double s2, bool symmetric) {
    double rhs = sobolev_norm(f, s1, true) * sobolev_norm(g, s2, true);
    if (symmetric) {
        rhs += sobolev_norm(f, s2, true) * sobolev_norm(g, s1, true);
    }
    return rhs;
}

struct Entry {
    std::size_t report;
    std::string label;
    double lhs;
    double rhs;
    double limit;
};

enum ReportId : std::size_t {
    kInterpInhom,
    kInterpHom,
    kInjection,
    kProduct,
    kProductSingle,
    kCalderon,
    kAnisotropic,
    kAnisotropicInterp,
    kReportCount
};

constexpr std::array<double, 4> kSobolevList = {-0.4, 0.2, 0.5, 0.9};
constexpr std::array<double, 4> kSigmaList = {0.0, 0.25, 0.5, 0.75};
constexpr std::array<double, 4> kLpList = {1.5, 2.0, 3.0, 4.0};
constexpr std::array<double, 3> kThetaList = {0.25, 0.5, 0.75};
constexpr std::array<std::pair<double, double>, 3> kInterpPairs = {{{-0.4, 0.9}, {0.2, 1.5}, {0.5, 2.0}}};

std::vector<Entry> evaluate_sample(const SpectralField& f, const SpectralField& g, const DissipParams& p,
                                   double corrupt) {
    std::vector<Entry> out;
    for (bool homogeneous : {false, true}) {
        const std::size_t id = homogeneous ? kInterpHom : kInterpInhom;
        for (auto [s1, s2] : kInterpPairs) {
            const double n1 = sobolev_norm(f, s1, homogeneous);
            const double n2 = sobolev_norm(f, s2, homogeneous);
            for (double t : kThetaList) {
                const double lhs = sobolev_norm(f, t * s1 + (1.0 - t) * s2, homogeneous);
                out.push_back({id, "s1=" + fmt(s1) + ",s2=" + fmt(s2) + ",t=" + fmt(t), corrupt * lhs,
                               std::pow(n1, t) * std::pow(n2, 1.0 - t), 1.0});
            }
        }
    }

    for (double sigma : kSigmaList) {
        const double q = 2.0 / (1.0 - sigma);
        out.push_back({kInjection, "sigma=" + fmt(sigma) + ",p=" + fmt(q), lp_norm(f, q), sobolev_norm(f, sigma, true),
                       std::numeric_limits<double>::infinity()});
    }

    const auto fg = oversampled_product(f, g);
    for (double s1 : kSobolevList) {
        for (double s2 : kSobolevList) {
            if (!(s1 < 1.0 && s1 + s2 > 0.0)) {
                continue;
            }
            const std::string label = "s1=" + fmt(s1) + ",s2=" + fmt(s2);
            const double lhs = product_lhs(fg, s1, s2);
            out.push_back({kProduct, label, lhs, product_rhs(f, g, s1, s2, true),
                           std::numeric_limits<double>::infinity()});
            if (s2 < 1.0) {
                out.push_back({kProductSingle, label, lhs, product_rhs(f, g, s1, s2, false),
                               std::numeric_limits<double>::infinity()});
            }
        }
    }

    const auto vel = riesz_velocity(f);
    for (double q : kLpList) {
        out.push_back({kCalderon, "p=" + fmt(q), lp_norm(vel.u1, vel.u2, q), lp_norm(f, q),
                       std::numeric_limits<double>::infinity()});
    }

    if (p.alpha <= p.beta) {
        const double z = p.alpha / p.beta;
        for (double s : kSobolevList) {
            const std::string label = "s=" + fmt(s);
            const double base = sobolev_norm(f, s, true);
            const double d1 = directional_seminorm(f, Axis::x1, p.alpha, s);
            const double d2b = directional_seminorm(f, Axis::x2, p.beta, s);
            const double d2a = directional_seminorm(f, Axis::x2, p.alpha, s);
            out.push_back({kAnisotropic, label, corrupt * sobolev_norm(f, s + p.alpha, true), base + d1 + d2b, 1.0});
            out.push_back(
                {kAnisotropicInterp, label, corrupt * d2a, std::pow(base, 1.0 - z) * std::pow(d2b, z), 1.0});
        }
    }
    return out;
}

std::size_t skipped_product_cases(bool single) {
    std::size_t n = 0;
    for (double s1 : kSobolevList) {
        for (double s2 : kSobolevList) {
            const bool ok = s1 < 1.0 && s1 + s2 > 0.0 && (!single || s2 < 1.0);
            n += ok ? 0 : 1;
        }
    }
    return n;
}

}  // namespace

double product_law_ratio(const SpectralField& f, const SpectralField& g, double s1, double s2, bool symmetric) {
    const auto fg = oversampled_product(f, g);
    return product_lhs(fg, s1, s2) / product_rhs(f, g, s1, s2, symmetric);
}

std::vector<InequalityReport> functional_inequality_suite(const FieldEnsembleSpec& spec, const DissipParams& p,
                                                          const FunctionalSuiteOptions& options) {
    p.validate();
    options.grid.validate();
    spec.validate(options.grid);
    if (!(options.corrupt_factor > 0.0)) {
        throw std::invalid_argument("functional_inequality_suite: corrupt_factor must be positive");
    }

    std::vector<std::vector<Entry>> per_sample(spec.count);
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < spec.count; i += step) {
            const auto f = random_band_limited_field(spec, options.grid, 2 * i);
            const auto g = random_band_limited_field(spec, options.grid, 2 * i + 1);
            per_sample[i] = evaluate_sample(f, g, p, options.corrupt_factor);
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(spec.count, 1));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::vector<Accumulator> acc;
    acc.emplace_back("interpolation_inhomogeneous", true, true, spec.seed);
    acc.emplace_back("interpolation_homogeneous", true, true, spec.seed);
    acc.emplace_back("sobolev_injection", true, false, spec.seed);
    acc.emplace_back("product_law", true, false, spec.seed);
    acc.emplace_back("product_law_single", true, false, spec.seed);
    acc.emplace_back("calderon_zygmund", true, false, spec.seed);
    acc.emplace_back("anisotropic_bound", true, true, spec.seed);
    acc.emplace_back("anisotropic_interpolation", true, true, spec.seed);

    for (std::size_t i = 0; i < spec.count; ++i) {
        for (const auto& e : per_sample[i]) {
            acc[e.report].add(e.label, i, e.lhs, e.rhs, e.limit);
        }
    }
    acc[kProduct].skip(skipped_product_cases(false));
    acc[kProductSingle].skip(skipped_product_cases(true));
    if (p.alpha > p.beta) {
        acc[kAnisotropic].skip();
        acc[kAnisotropicInterp].skip();
    }

    std::vector<InequalityReport> out;
    for (auto& a : acc) {
        out.push_back(a.finish());
    }
    return out;
}

std::size_t total_violations(const std::vector<InequalityReport>& reports, bool theorem_backed_only) {
    std::size_t n = 0;
    for (const auto& r : reports) {
        if (r.theorem_backed || !theorem_backed_only) {
            n += r.violations;
        }
    }
    return n;
}

}  // namespace aqg
