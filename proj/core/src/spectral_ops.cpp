#include "aqg/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aqg/norms.hpp"
#include "aqg/transform.hpp"
#include "internal.hpp"

namespace aqg {

double dissipation_symbol(Wavenumber k, const DissipParams& p) {
    const double a1 = k.k1 == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(k.k1)), 2.0 * p.alpha);
    const double a2 = k.k2 == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(k.k2)), 2.0 * p.beta);
    return p.mu * a1 + p.nu * a2;
}

double gevrey_symbol(Wavenumber k, const DissipParams& p) {
    const double b1 = k.k1 == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(k.k1)), p.alpha);
    const double b2 = k.k2 == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(k.k2)), p.beta);
    return 2.0 * (b1 + b2);
}

namespace detail {

void require_mean_zero(const SpectralField& f, const char* what) {
    double energy = 0.0;
    for (auto c : f.coeffs()) {
        energy += std::norm(c);
    }
    const double scale = 1.0 + std::sqrt(energy);
    if (std::abs(f.mean()) > 1e-13 * scale) {
        throw std::invalid_argument(std::string(what) + ": field must have zero mean");
    }
}

NonlinearEval evaluate_bilinear(const SpectralField& theta1, const SpectralField& theta2) {
    if (!(theta1.grid() == theta2.grid())) {
        throw std::invalid_argument("bilinear_term: grid mismatch " + to_string(theta1.grid()) + " vs " +
                                    to_string(theta2.grid()));
    }
    const auto& grid = theta1.grid();
    const auto vel = riesz_velocity(dealias(theta2));
    const auto t1 = to_physical(dealias(theta1));
    const auto [u1, u2] = to_physical_pair(vel.u1, vel.u2);

    std::vector<double> q1(grid.size());
    std::vector<double> q2(grid.size());
    double speed2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        q1[i] = t1[i] * u1[i];
        q2[i] = t1[i] * u2[i];
        speed2 = std::max(speed2, u1[i] * u1[i] + u2[i] * u2[i]);
    }
    const auto [f1, f2] = to_spectral_pair(grid, q1, q2);

    SpectralField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavenumber_at(i);
        if (!grid.dealias_retained(k)) {
            continue;
        }
        out[i] = Complex(0.0, 1.0) * (static_cast<double>(k.k1) * f1[i] + static_cast<double>(k.k2) * f2[i]);
    }
    out[0] = Complex{};
    return {std::move(out), std::sqrt(speed2)};
}

}  // namespace detail

Velocity riesz_velocity(const SpectralField& theta) {
    detail::require_mean_zero(theta, "riesz_velocity");
    const auto& grid = theta.grid();
    Velocity v{SpectralField(grid), SpectralField(grid)};
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const auto k = grid.wavenumber_at(i);
        const double k1 = k.k1;
        const double k2 = k.k2;
        const double inv = 1.0 / std::sqrt(k1 * k1 + k2 * k2);
        v.u1[i] = Complex(0.0, -k2 * inv) * theta[i];
        v.u2[i] = Complex(0.0, k1 * inv) * theta[i];
    }
    return v;
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    const auto& grid = f.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!grid.dealias_retained(grid.wavenumber_at(i))) {
            out[i] = Complex{};
        }
    }
    return out;
}

SpectralField bilinear_term(const SpectralField& theta1, const SpectralField& theta2) {
    return detail::evaluate_bilinear(theta1, theta2).term;
}

SpectralField nonlinear_term(const SpectralField& theta) { return bilinear_term(theta, theta); }

SpectralField apply_semigroup(const SpectralField& f, double t, const DissipParams& p) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("apply_semigroup: time must be nonnegative");
    }
    SpectralField out = f;
    const auto& grid = f.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] *= std::exp(-t * dissipation_symbol(grid.wavenumber_at(i), p));
    }
    return out;
}

SpectralField apply_gevrey_weight(const SpectralField& f, double t, const DissipParams& p) {
    SpectralField out = f;
    const auto& grid = f.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] *= std::exp(0.5 * t * gevrey_symbol(grid.wavenumber_at(i), p));
    }
    return out;
}

double max_speed(const SpectralField& theta) {
    const auto vel = riesz_velocity(theta);
    const auto [u1, u2] = to_physical_pair(vel.u1, vel.u2);
    double speed2 = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) {
        speed2 = std::max(speed2, u1[i] * u1[i] + u2[i] * u2[i]);
    }
    return std::sqrt(speed2);
}

SymbolTable SymbolTable::build(const GridSpec& grid, const DissipParams& p) {
    SymbolTable table;
    table.grid = grid;
    const auto n = grid.size();
    table.dissipation.resize(n);
    table.gevrey.resize(n);
    table.k1.resize(n);
    table.k2.resize(n);
    table.k_squared.resize(n);
    table.retained.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = grid.wavenumber_at(i);
        table.dissipation[i] = dissipation_symbol(k, p);
        table.gevrey[i] = gevrey_symbol(k, p);
        table.k1[i] = k.k1;
        table.k2[i] = k.k2;
        table.k_squared[i] = static_cast<double>(k.k1) * k.k1 + static_cast<double>(k.k2) * k.k2;
        table.retained[i] = grid.dealias_retained(k) ? 1 : 0;
    }
    return table;
}

}  // namespace aqg
