#include "aqg/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aqg {

std::uint64_t mix_seed(std::uint64_t value) {
    std::uint64_t z = value + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

void FieldEnsembleSpec::validate(const GridSpec& grid) const {
    if (count == 0) {
        throw std::invalid_argument("ensemble count must be >= 1");
    }
    if (kmax < 1 || kmax > grid.dealias_kmax()) {
        throw std::invalid_argument("ensemble kmax " + std::to_string(kmax) + " outside the dealiased band of grid " +
                                    to_string(grid));
    }
}

SpectralField random_band_limited_field(const FieldEnsembleSpec& spec, const GridSpec& grid, std::size_t index) {
    spec.validate(grid);
    SpectralField f(grid);
    const std::uint64_t sample_key = mix_seed(mix_seed(spec.seed) ^ static_cast<std::uint64_t>(index));
    for (int k1 = -spec.kmax; k1 <= spec.kmax; ++k1) {
        for (int k2 = 0; k2 <= spec.kmax; ++k2) {
            // one representative per +-k pair
            if (k2 == 0 && k1 <= 0) {
                continue;
            }
            const auto mode_key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k1)) << 32) |
                                  static_cast<std::uint64_t>(static_cast<std::uint32_t>(k2));
            const double phase = 2.0 * std::numbers::pi * unit_interval(mix_seed(sample_key ^ mix_seed(mode_key)));
            const double radius = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            f.set_hermitian({k1, k2}, std::polar(std::pow(radius, -spec.spectrum_slope), phase));
        }
    }
    return f;
}

}  // namespace aqg
