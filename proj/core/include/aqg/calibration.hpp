#pragma once

#include <cstddef>
#include <cstdint>

#include "aqg/existence.hpp"
#include "aqg/grid.hpp"

namespace aqg {

struct Calibration {
    ConstantsTable constants;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    /// Observed ratio sup of the raw estimate ratios before the safety factor.
    ConstantsTable raw;
    /// Largest |(||R^perp f||_{L2} / ||f||_{L2}) - 1| over the sampled fields.
    double riesz_l2_deviation = 0.0;
};

inline constexpr double kCalibrationSafety = 2.0;

/// Empirical C1..C4: the largest ratio of the Duhamel term to the right-hand
/// side of its estimate over random band-limited pairs held constant in time
/// (where the Duhamel integral is exact), times a safety factor of 2.
/// Deterministic in seed; sample i is the same for every n_samples.
Calibration calibrate(const DissipParams& p, const GridSpec& grid, std::size_t n_samples, std::uint64_t seed);

inline ConstantsTable calibrate_constants(const DissipParams& p, const GridSpec& grid, std::size_t n_samples,
                                          std::uint64_t seed) {
    return calibrate(p, grid, n_samples, seed).constants;
}

}  // namespace aqg
