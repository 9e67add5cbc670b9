#pragma once

#include <span>
#include <utility>
#include <vector>

#include "aqg/spectral_field.hpp"

namespace aqg {

/// Grid values f(x_j) at x_j = 2 pi j / n, k1-major like the coefficients.
std::vector<double> to_physical(const SpectralField& f);

/// Coefficients of real grid data, normalized so that fhat_0 is the grid mean.
/// The result is made exactly Hermitian.
SpectralField to_spectral(const GridSpec& grid, std::span<const double> values);

/// Grid values of two real fields from one complex transform of a + i b.
std::pair<std::vector<double>, std::vector<double>> to_physical_pair(const SpectralField& a, const SpectralField& b);

/// Coefficients of two real grid arrays from one complex transform; both
/// results are exactly Hermitian.
std::pair<SpectralField, SpectralField> to_spectral_pair(const GridSpec& grid, std::span<const double> a,
                                                         std::span<const double> b);

/// Copies coefficients onto another grid, keeping wavenumbers representable
/// on both and dropping the Nyquist lines of the source. Zero-padding when
/// the target is finer.
SpectralField resample(const SpectralField& f, const GridSpec& target);

}  // namespace aqg
