#pragma once

#include <vector>

#include "aqg/params.hpp"
#include "aqg/spectral_field.hpp"

namespace aqg {

/// mu |k1|^{2 alpha} + nu |k2|^{2 beta}; zero only at the origin.
double dissipation_symbol(Wavenumber k, const DissipParams& p);

/// Gevrey weight exponent symbol 2 (|k1|^alpha + |k2|^beta).
double gevrey_symbol(Wavenumber k, const DissipParams& p);

/// Velocity components of u = R^perp theta.
struct Velocity {
    SpectralField u1;
    SpectralField u2;
};

/// Applies -i k2/|k| and i k1/|k|. Throws std::invalid_argument when theta
/// carries a nonzero mean (the multiplier is singular there).
Velocity riesz_velocity(const SpectralField& theta);

/// Zeroes every mode outside the 2/3-rule retained set.
SpectralField dealias(const SpectralField& f);

/// div(theta1 u_{theta2}) for the dealiased projections of both inputs,
/// projected back onto the retained set. Mean-zero and exactly Hermitian.
SpectralField bilinear_term(const SpectralField& theta1, const SpectralField& theta2);

/// div(theta u_theta) = u_theta . grad theta.
SpectralField nonlinear_term(const SpectralField& theta);

/// Multiplies each coefficient by exp(-t A(k)). Throws for t < 0.
SpectralField apply_semigroup(const SpectralField& f, double t, const DissipParams& p);

/// Multiplies each coefficient by exp((t/2) B(k)), the Gevrey weight.
SpectralField apply_gevrey_weight(const SpectralField& f, double t, const DissipParams& p);

/// Largest pointwise |u| on the physical grid.
double max_speed(const SpectralField& theta);

/// Per-grid tables of the multipliers, shared by the time integrators.
struct SymbolTable {
    GridSpec grid;
    std::vector<double> dissipation;  // A(k)
    std::vector<double> gevrey;       // B(k)
    std::vector<double> k1;
    std::vector<double> k2;
    std::vector<double> k_squared;
    std::vector<unsigned char> retained;

    static SymbolTable build(const GridSpec& grid, const DissipParams& p);
};

}  // namespace aqg
