#include "aqg/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "aqg/ensemble.hpp"
#include "aqg/norms.hpp"
#include "aqg/spectral_ops.hpp"

namespace aqg {
namespace {

constexpr std::array<double, 7> kHorizons = {1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5, 1.0};
constexpr std::array<double, 3> kSlopes = {1.5, 2.0, 2.5};

/// Exact Duhamel integral of a time-constant forcing: (1 - exp(-T A)) / A * N.
SpectralField constant_forcing_duhamel(const SpectralField& term, double T, const DissipParams& p) {
    SpectralField out = term;
    const auto& grid = term.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = dissipation_symbol(grid.wavenumber_at(i), p);
        out[i] *= a > 0.0 ? -std::expm1(-T * a) / a : T;
    }
    return out;
}

}  // namespace

Calibration calibrate(const DissipParams& p, const GridSpec& grid, std::size_t n_samples, std::uint64_t seed) {
    p.validate();
    grid.validate();
    if (n_samples < 1) {
        throw std::invalid_argument("calibration needs at least one sample");
    }
    const auto low = low_range_exponents(p);
    const auto high = high_range_exponents(p);

    Calibration cal;
    cal.samples = n_samples;
    cal.seed = seed;
    cal.raw = ConstantsTable{0.0, 0.0, 0.0, 0.0};

    for (std::size_t i = 0; i < n_samples; ++i) {
        FieldEnsembleSpec spec;
        spec.seed = seed;
        spec.count = 2 * n_samples;
        spec.kmax = grid.dealias_kmax();
        spec.spectrum_slope = kSlopes[i % kSlopes.size()];
        const auto f1 = random_band_limited_field(spec, grid, 2 * i);
        const auto f2 = random_band_limited_field(spec, grid, 2 * i + 1);
        const auto term = bilinear_term(f1, f2);

        const auto vel = riesz_velocity(f1);
        const double riesz_ratio = lp_norm(vel.u1, vel.u2, 2.0) / lp_norm(f1, 2.0);
        cal.riesz_l2_deviation = std::max(cal.riesz_l2_deviation, std::abs(riesz_ratio - 1.0));

        const double n1 = sobolev_norm(f1, p.s);
        const double n2 = sobolev_norm(f2, p.s);
        for (double T : kHorizons) {
            const auto duhamel = constant_forcing_duhamel(term, T, p);
            const double plain = sobolev_norm(duhamel, p.s);
            const double weighted = gevrey_weighted_norm(duhamel, T, p.s, p).value;
            const double w1 = gevrey_weighted_norm(f1, T, p.s, p).value;
            const double w2 = gevrey_weighted_norm(f2, T, p.s, p).value;
            const double g_low = smallness_sum(low, T);
            const double g_high = smallness_sum(high, T);
            const double growth = std::exp(T);

            cal.raw.c1 = std::max(cal.raw.c1, plain / (g_low * n1 * n2));
            cal.raw.c2 = std::max(cal.raw.c2, plain / (g_high * n1 * n2));
            cal.raw.c3 = std::max(cal.raw.c3, weighted / (growth * g_low * w1 * w2));
            cal.raw.c4 = std::max(cal.raw.c4, weighted / (growth * g_high * w1 * w2));
        }
    }
    cal.constants = ConstantsTable{kCalibrationSafety * cal.raw.c1, kCalibrationSafety * cal.raw.c2,
                                   kCalibrationSafety * cal.raw.c3, kCalibrationSafety * cal.raw.c4};
    return cal;
}

}  // namespace aqg
