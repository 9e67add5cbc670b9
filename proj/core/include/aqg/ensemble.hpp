#pragma once

#include <cstdint>

#include "aqg/spectral_field.hpp"

namespace aqg {

/// Ensemble of random band-limited fields with a power-law spectrum.
struct FieldEnsembleSpec {
    std::uint64_t seed = 1;
    std::size_t count = 1000;
    int kmax = 8;
    double spectrum_slope = 1.5;

    /// Throws std::invalid_argument if kmax leaves the 2/3 band of grid or count is zero.
    void validate(const GridSpec& grid) const;
};

/// Field number `index` of the ensemble: |fhat(k)| = |k|^{-slope} with a uniform
/// random phase for 0 < max|k_i| <= kmax, zero elsewhere.
///
/// Each phase is a pure function of (seed, index, k), so the same sample drawn
/// on a finer grid has identical coefficients on the shared modes.
SpectralField random_band_limited_field(const FieldEnsembleSpec& spec, const GridSpec& grid, std::size_t index);

/// SplitMix64 finalizer; exposed for deterministic per-sample seeding.
std::uint64_t mix_seed(std::uint64_t value);

/// Uniform double in [0, 1) from a 64-bit hash.
double unit_interval(std::uint64_t bits);

}  // namespace aqg
