#include "aqg/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "aqg/spectral_ops.hpp"
#include "aqg/transform.hpp"

namespace aqg {
namespace {

double weighted_sum(const SpectralField& f, auto&& weight) {
    const auto& grid = f.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double m2 = std::norm(f[i]);
        if (m2 == 0.0) {
            continue;
        }
        sum += weight(grid.wavenumber_at(i)) * m2;
    }
    return sum;
}

double k_squared(Wavenumber k) { return static_cast<double>(k.k1) * k.k1 + static_cast<double>(k.k2) * k.k2; }

double grid_mean_power(std::span<const double> values, double p) {
    double sum = 0.0;
    for (double v : values) {
        sum += std::pow(std::abs(v), p);
    }
    return sum / static_cast<double>(values.size());
}

void require_exponent(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw std::invalid_argument("lp_norm: exponent must lie in (1, inf)");
    }
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
    if (homogeneous) {
        return std::sqrt(weighted_sum(f, [s](Wavenumber k) {
            if (k.k1 == 0 && k.k2 == 0) {
                return 0.0;
            }
            return std::pow(k_squared(k), s);
        }));
    }
    return std::sqrt(weighted_sum(f, [s](Wavenumber k) { return std::pow(1.0 + k_squared(k), s); }));
}

WeightedNorm gevrey_weighted_norm(const SpectralField& f, double t, double s, const DissipParams& p,
                                  double exponent_cap) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("gevrey_weighted_norm: weight time must be nonnegative");
    }
    WeightedNorm result;
    const double sum = weighted_sum(f, [&](Wavenumber k) {
        const double exponent = 0.5 * t * gevrey_symbol(k, p);
        if (exponent > exponent_cap && !result.saturated) {
            result.saturated = true;
            result.offending = k;
        }
        return std::pow(1.0 + k_squared(k), s) * std::exp(2.0 * exponent);
    });
    result.value = std::sqrt(sum);
    return result;
}

double gevrey_sobolev_norm(const SpectralField& f, double radius, double order, double s) {
    return std::sqrt(weighted_sum(f, [&](Wavenumber k) {
        const double kk = k_squared(k);
        return std::exp(2.0 * radius * std::pow(kk, 0.5 / order)) * std::pow(1.0 + kk, s);
    }));
}

double lp_norm(const SpectralField& f, double p) {
    require_exponent(p);
    const auto values = to_physical(f);
    return std::pow(grid_mean_power(values, p), 1.0 / p);
}

double lp_norm(const SpectralField& f1, const SpectralField& f2, double p) {
    require_exponent(p);
    const auto v1 = to_physical(f1);
    const auto v2 = to_physical(f2);
    std::vector<double> length(v1.size());
    for (std::size_t i = 0; i < v1.size(); ++i) {
        length[i] = std::hypot(v1[i], v2[i]);
    }
    return std::pow(grid_mean_power(length, p), 1.0 / p);
}

double directional_seminorm(const SpectralField& f, Axis axis, double exponent, double s) {
    return std::sqrt(weighted_sum(f, [&](Wavenumber k) {
        if (k.k1 == 0 && k.k2 == 0) {
            return 0.0;
        }
        const int component = axis == Axis::x1 ? k.k1 : k.k2;
        const double directional = std::pow(std::abs(static_cast<double>(component)), 2.0 * exponent);
        return std::pow(k_squared(k), s) * directional;
    }));
}

}  // namespace aqg
