#include "aqg/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aqg/spectral_ops.hpp"

namespace aqg {

std::vector<WeightedNorm> weighted_norm_trace(const Trajectory& traj, std::span<const double> times,
                                              const DissipParams& p, double s) {
    if (traj.size() != times.size()) {
        throw std::invalid_argument("weighted_norm_trace: trajectory and times differ in length");
    }
    std::vector<WeightedNorm> out;
    out.reserve(traj.size());
    for (std::size_t j = 0; j < traj.size(); ++j) {
        out.push_back(gevrey_weighted_norm(traj[j], times[j], s, p));
    }
    return out;
}

namespace {

std::optional<AxisFit> fit_axis(const SpectralField& f_t, const SpectralField& f_0, bool first_axis, double exponent) {
    const auto& grid = f_t.grid();
    const int kmax = (first_axis ? grid.n1 : grid.n2) / 2 - 1;
    std::vector<double> xs;
    std::vector<double> ys;
    for (int k = 1; k <= kmax; ++k) {
        const Wavenumber w = first_axis ? Wavenumber{k, 0} : Wavenumber{0, k};
        const double a_t = std::abs(f_t.at(w));
        const double a_0 = std::abs(f_0.at(w));
        if (a_t <= kFitNoiseFloor || a_0 <= kFitNoiseFloor) {
            continue;
        }
        xs.push_back(-std::pow(static_cast<double>(k), 2.0 * exponent));
        ys.push_back(std::log(a_t) - std::log(a_0));
    }
    if (xs.size() < kMinFitModes) {
        return std::nullopt;
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    AxisFit fit;
    fit.rate = sxy / sxx;
    fit.intercept = my - fit.rate * mx;
    fit.modes = xs.size();
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.rate * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace

RadiusFit analyticity_radius_fit(const SpectralField& f_t, const SpectralField& f_0, double t, const DissipParams& p) {
    if (!(f_t.grid() == f_0.grid())) {
        throw std::invalid_argument("analyticity_radius_fit: grid mismatch");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("analyticity_radius_fit: time must be nonnegative");
    }
    return {fit_axis(f_t, f_0, true, p.alpha), fit_axis(f_t, f_0, false, p.beta)};
}

H2SmoothingReport h2_smoothing_check(const Trajectory& traj, std::span<const double> times, double t0,
                                     const DissipParams& p, double s) {
    if (traj.size() != times.size() || traj.size() < 3) {
        throw std::invalid_argument("h2_smoothing_check: need at least 3 matching nodes");
    }
    if (!(t0 > times.front() && t0 < times.back())) {
        throw std::invalid_argument("h2_smoothing_check: t0 must lie strictly inside the trajectory span");
    }
    std::size_t node = 0;
    for (std::size_t j = 1; j < times.size(); ++j) {
        if (std::abs(times[j] - t0) < std::abs(times[node] - t0)) {
            node = j;
        }
    }
    if (node == 0 || node + 1 == times.size()) {
        throw std::invalid_argument("h2_smoothing_check: t0 is nearest to a boundary node");
    }

    H2SmoothingReport report;
    report.node = node;
    report.t0 = t0;
    report.margin = 0.5 * t0;
    report.h2_norm = sobolev_norm(traj[node], 2.0);

    const double tau = t0 - report.margin;
    const auto& grid = traj[node].grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavenumber_at(i);
        if (!grid.dealias_retained(k)) {
            continue;
        }
        const double kk = static_cast<double>(k.k1) * k.k1 + static_cast<double>(k.k2) * k.k2;
        const double value = std::pow(1.0 + kk, 4.0 - 2.0 * s) * std::exp(-tau * gevrey_symbol(k, p));
        report.weight_sup = std::max(report.weight_sup, value);
    }
    const double power = 8.0 - 4.0 * s;
    report.weight_shape = 1.0 + std::pow(tau, -power / p.alpha) + std::pow(tau, -power / p.beta);
    report.weight_constant = report.weight_sup / report.weight_shape;

    for (std::size_t j : {node - 1, node + 1}) {
        report.continuity_modulus = std::max(report.continuity_modulus, sobolev_norm(traj[j] - traj[node], 2.0));
    }
    return report;
}

RemarkChainTerms remark_chain_terms(double xi1, double xi2, double t, const DissipParams& p) {
    const double r = std::hypot(xi1, xi2);
    const double a1 = std::pow(std::abs(xi1), p.alpha);
    const double b2 = std::pow(std::abs(xi2), p.beta);
    return {t * std::pow(r, p.alpha), t * (a1 + b2), 2.0 * t * std::pow(r, p.beta)};
}

RemarkChainReport remark_chain_check(const DissipParams& p, double T0, std::size_t t_samples, double T1, int kmax) {
    if (!(T0 >= 0.0) || t_samples < 1 || kmax < 1) {
        throw std::invalid_argument("remark_chain_check: need T0 >= 0, t_samples >= 1, kmax >= 1");
    }
    RemarkChainReport report;
    report.T0 = T0;
    report.t_max = std::min(T0, T1);
    report.alpha_le_beta = p.alpha <= p.beta;
    report.scalar_links = {
        {"|k|^a <= |k1|^a + |k2|^a", 0, 0},
        {"|k1|^a + |k2|^a <= |k1|^a + |k2|^b + 1", 0, 0},
        {"|k1|^a + |k2|^b + 1 <= 2|k2|^b + 2", 0, 0},
        {"2|k2|^b + 2 <= 2|k|^b + 2", 0, 0},
    };
    report.lower.name = "exp(-T0) exp(t|k|^a) <= exp(t(|k1|^a + |k2|^b))";
    report.upper.name = "exp(t(|k1|^a + |k2|^b)) <= exp(T0) exp(2t|k|^b)";
    report.lower_needed = -std::numeric_limits<double>::infinity();
    report.upper_needed = -std::numeric_limits<double>::infinity();

    auto check = [](ChainLink& link, double lhs, double rhs) {
        ++link.samples;
        const double slack = rhs - lhs;
        link.min_slack = std::min(link.min_slack, slack);
        if (slack < -1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)})) {
            ++link.violations;
        }
    };

    for (int k1 = -kmax; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 == 0) {
                continue;
            }
            const double x1 = k1;
            const double x2 = k2;
            const double r = std::hypot(x1, x2);
            const double ra = std::pow(r, p.alpha);
            const double rb = std::pow(r, p.beta);
            const double a1 = std::pow(std::abs(x1), p.alpha);
            const double a2 = std::pow(std::abs(x2), p.alpha);
            const double b2 = std::pow(std::abs(x2), p.beta);
            check(report.scalar_links[0], ra, a1 + a2);
            check(report.scalar_links[1], a1 + a2, a1 + b2 + 1.0);
            check(report.scalar_links[2], a1 + b2 + 1.0, 2.0 * b2 + 2.0);
            check(report.scalar_links[3], 2.0 * b2 + 2.0, 2.0 * rb + 2.0);
            for (std::size_t i = 0; i < t_samples; ++i) {
                const double t =
                    t_samples == 1 ? 0.0 : report.t_max * static_cast<double>(i) / static_cast<double>(t_samples - 1);
                const auto terms = remark_chain_terms(x1, x2, t, p);
                check(report.lower, terms.left - T0, terms.middle);
                check(report.upper, terms.middle, terms.right + T0);
                report.lower_needed = std::max(report.lower_needed, terms.left - terms.middle);
                report.upper_needed = std::max(report.upper_needed, terms.middle - terms.right);
            }
        }
    }
    return report;
}

}  // namespace aqg
