#include "aqg/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aqg {

SpectralField::SpectralField(GridSpec grid) : grid_(grid), coeffs_(grid.size()) { grid_.validate(); }

SpectralField::SpectralField(GridSpec grid, std::vector<Complex> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    grid_.validate();
    if (coeffs_.size() != grid_.size()) {
        throw std::invalid_argument("coefficient count does not match grid " + to_string(grid_));
    }
}

SpectralField SpectralField::from_sines(GridSpec grid, std::span<const SineMode> modes) {
    SpectralField f(grid);
    for (const auto& m : modes) {
        if (m.k.k1 == 0 && m.k.k2 == 0) {
            continue;  // sin(phase) is a constant, excluded from mean-zero fields
        }
        if (!grid.contains(m.k) || !grid.contains(Wavenumber{-m.k.k1, -m.k.k2})) {
            throw std::invalid_argument("sine mode not representable on grid " + to_string(grid));
        }
        // a sin(k.x + phi) = (a / 2i) e^{i phi} e^{ik.x} + c.c.
        const Complex c = m.amplitude * std::polar(1.0, m.phase) / Complex(0.0, 2.0);
        const auto idx = grid.index_of(m.k);
        const auto cidx = grid.conjugate_index(idx);
        f.coeffs_[idx] += c;
        f.coeffs_[cidx] += std::conj(c);
    }
    return f;
}

void SpectralField::set_hermitian(Wavenumber k, Complex value) {
    const auto idx = grid_.index_of(k);
    const auto cidx = grid_.conjugate_index(idx);
    if (idx == cidx) {
        coeffs_[idx] = Complex(value.real(), 0.0);
        return;
    }
    coeffs_[idx] = value;
    coeffs_[cidx] = std::conj(value);
}

double SpectralField::hermitian_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        worst = std::max(worst, std::abs(coeffs_[i] - std::conj(coeffs_[grid_.conjugate_index(i)])));
    }
    return worst;
}

void SpectralField::make_hermitian() {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto j = grid_.conjugate_index(i);
        if (j < i) {
            continue;
        }
        if (j == i) {
            coeffs_[i] = Complex(coeffs_[i].real(), 0.0);
            continue;
        }
        const Complex a = coeffs_[i];
        const Complex b = coeffs_[j];
        coeffs_[i] = 0.5 * (a + std::conj(b));
        coeffs_[j] = std::conj(coeffs_[i]);
    }
}

bool SpectralField::all_finite() const {
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            return false;
        }
    }
    return true;
}

bool SpectralField::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != Complex{}) {
            return false;
        }
    }
    return true;
}

void SpectralField::require_same_grid(const SpectralField& other) const {
    if (!(grid_ == other.grid_)) {
        throw std::invalid_argument("grid mismatch: " + to_string(grid_) + " vs " + to_string(other.grid_));
    }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += other.coeffs_[i];
    }
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= other.coeffs_[i];
    }
    return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
    for (auto& c : coeffs_) {
        c *= scale;
    }
    return *this;
}

}  // namespace aqg
