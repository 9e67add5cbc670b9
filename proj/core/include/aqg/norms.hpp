#pragma once

#include <optional>

#include "aqg/params.hpp"
#include "aqg/spectral_field.hpp"

namespace aqg {

/// (sum_k w(k) |fhat_k|^2)^{1/2} with w = (1+|k|^2)^s, or |k|^{2s} with the
/// k = 0 term omitted when homogeneous.
double sobolev_norm(const SpectralField& f, double s, bool homogeneous = false);

inline double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

/// Default cap on the Gevrey weight exponent (t/2) B(k).
inline constexpr double kWeightExponentCap = 700.0;

struct WeightedNorm {
    double value = 0.0;
    bool saturated = false;
    /// First nonzero mode whose exponent exceeded the cap.
    std::optional<Wavenumber> offending;
};

/// H^s norm of exp((t/2) B(D)) f. Modes past the exponent cap are still
/// included (the value may overflow) and the result is flagged.
WeightedNorm gevrey_weighted_norm(const SpectralField& f, double t, double s, const DissipParams& p,
                                  double exponent_cap = kWeightExponentCap);

/// Gevrey-Sobolev norm with weight exp(a |k|^{1/sigma}) (1+|k|^2)^{s/2}.
double gevrey_sobolev_norm(const SpectralField& f, double radius, double order, double s);

/// Grid quadrature of |f|^p in the normalized measure, to the power 1/p.
double lp_norm(const SpectralField& f, double p);

/// L^p norm of the pointwise Euclidean length of a vector field.
double lp_norm(const SpectralField& f1, const SpectralField& f2, double p);

enum class Axis { x1 = 1, x2 = 2 };

/// Homogeneous H^s norm of |d_axis|^exponent f.
double directional_seminorm(const SpectralField& f, Axis axis, double exponent, double s);

}  // namespace aqg
