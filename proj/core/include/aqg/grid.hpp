#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>

namespace aqg {

/// Integer wavenumber pair (k1, k2) on the torus [0, 2pi)^2.
struct Wavenumber {
    int k1 = 0;
    int k2 = 0;

    friend bool operator==(const Wavenumber&, const Wavenumber&) = default;
};

/// Mode counts of a periodic square grid. Retained wavenumbers in each
/// direction are {-n/2+1, ..., n/2}; storage follows the transform ordering
/// with k1 as the slow index.
struct GridSpec {
    int n1 = 64;
    int n2 = 64;

    /// Throws std::invalid_argument unless both counts are even and >= 8.
    void validate() const;

    std::size_t size() const { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }

    std::size_t index(int i1, int i2) const {
        return static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2) + static_cast<std::size_t>(i2);
    }

    int wavenumber1(int i1) const { return i1 <= n1 / 2 ? i1 : i1 - n1; }
    int wavenumber2(int i2) const { return i2 <= n2 / 2 ? i2 : i2 - n2; }

    Wavenumber wavenumber_at(std::size_t flat) const {
        const auto i1 = static_cast<int>(flat / static_cast<std::size_t>(n2));
        const auto i2 = static_cast<int>(flat % static_cast<std::size_t>(n2));
        return {wavenumber1(i1), wavenumber2(i2)};
    }

    /// True if k is one of the representable wavenumbers of this grid.
    bool contains(Wavenumber k) const {
        return k.k1 > -n1 / 2 && k.k1 <= n1 / 2 && k.k2 > -n2 / 2 && k.k2 <= n2 / 2;
    }

    /// Flat index of a representable wavenumber.
    std::size_t index_of(Wavenumber k) const {
        const int i1 = k.k1 < 0 ? k.k1 + n1 : k.k1;
        const int i2 = k.k2 < 0 ? k.k2 + n2 : k.k2;
        return index(i1, i2);
    }

    /// Flat index of -k (modulo the grid period).
    std::size_t conjugate_index(std::size_t flat) const {
        const auto i1 = static_cast<int>(flat / static_cast<std::size_t>(n2));
        const auto i2 = static_cast<int>(flat % static_cast<std::size_t>(n2));
        return index((n1 - i1) % n1, (n2 - i2) % n2);
    }

    /// 2/3-rule retained set: |k_i| <= n_i / 3.
    bool dealias_retained(Wavenumber k) const {
        return 3 * std::abs(k.k1) <= n1 && 3 * std::abs(k.k2) <= n2;
    }

    /// Largest |k_i| kept by the 2/3 rule in the coarser direction.
    int dealias_kmax() const { return std::min(n1, n2) / 3; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

std::string to_string(const GridSpec& grid);

}  // namespace aqg
