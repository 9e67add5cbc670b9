#pragma once

#include <complex>
#include <span>
#include <vector>

#include "aqg/grid.hpp"

namespace aqg {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar field on the torus,
/// f(x) = sum_k fhat_k exp(i k . x).
///
/// Coefficients are stored in transform ordering (k1 slow). Real-valuedness
/// is carried by Hermitian symmetry fhat(-k) = conj(fhat(k)); dynamical
/// fields also have a zero mean mode.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(GridSpec grid);
    SpectralField(GridSpec grid, std::vector<Complex> coeffs);

    static SpectralField zeros(GridSpec grid) { return SpectralField(grid); }

    /// Sum of amplitude * sin(k . x + phase) over single modes.
    struct SineMode {
        Wavenumber k;
        double amplitude = 1.0;
        double phase = 0.0;
    };
    static SpectralField from_sines(GridSpec grid, std::span<const SineMode> modes);

    const GridSpec& grid() const { return grid_; }
    std::span<const Complex> coeffs() const { return coeffs_; }
    std::span<Complex> coeffs() { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }

    Complex operator[](std::size_t flat) const { return coeffs_[flat]; }
    Complex& operator[](std::size_t flat) { return coeffs_[flat]; }

    /// Coefficient at a representable wavenumber.
    Complex at(Wavenumber k) const { return coeffs_[grid_.index_of(k)]; }
    /// Sets fhat(k) and conj at -k so the field stays real.
    void set_hermitian(Wavenumber k, Complex value);

    Complex mean() const { return coeffs_.empty() ? Complex{} : coeffs_[0]; }

    /// Largest |fhat(k) - conj(fhat(-k))|.
    double hermitian_defect() const;
    /// Replaces each pair by its Hermitian average; self-conjugate modes become real.
    void make_hermitian();

    bool all_finite() const;
    bool is_zero() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double scale);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double scale, SpectralField a) { return a *= scale; }
    friend SpectralField operator*(SpectralField a, double scale) { return a *= scale; }

    friend bool operator==(const SpectralField&, const SpectralField&) = default;

  private:
    void require_same_grid(const SpectralField& other) const;

    GridSpec grid_{};
    std::vector<Complex> coeffs_;
};

/// Time-indexed fields on a shared grid.
using Trajectory = std::vector<SpectralField>;

}  // namespace aqg
