#pragma once

#include <limits>
#include <span>
#include <vector>

#include "aqg/params.hpp"

namespace aqg {

/// Implicit constants of the bilinear Duhamel estimates: c1, c2 for the plain
/// map (low and high Sobolev ranges), c3, c4 for the Gevrey-weighted map.
struct ConstantsTable {
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 1.0;
    double c4 = 1.0;

    /// Throws std::invalid_argument unless every constant is positive and finite.
    void validate() const;
};

/// Interior margin used in the s >= 1 estimate. Equals (2 alpha - 1)/2 unless
/// that would make the beta-exponent nonpositive, in which case (2 beta - 1)/2.
double estimate_margin(const DissipParams& p);

/// Exponents of T in the low-range smallness condition:
/// T^{(s-2+2a)/2a} + T^{(s-2+2b)/2b}.
std::vector<double> low_range_exponents(const DissipParams& p);

/// Exponents of T in the four-term condition used when s >= 1.
std::vector<double> high_range_exponents(const DissipParams& p);

/// sum_i T^{a_i} * exp(rate * T).
double smallness_sum(std::span<const double> exponents, double T, double rate = 0.0);

/// Largest T in (0, cap] with smallness_sum(exponents, T, rate) <= rhs, by
/// bisection to 1e-12 relative. Requires every exponent to be positive.
double largest_admissible_time(std::span<const double> exponents, double rhs, double rate = 0.0,
                               double cap = std::numeric_limits<double>::infinity());

/// Strict upper bound on the weighted existence time: exp(T1) < 3/2.
double weighted_time_cap();

struct ExistenceTime {
    /// Horizon; +inf for a zero initial norm (plain), NaN if degenerate.
    double T = 0.0;
    /// Root of the low-range condition (c1 or c3).
    double low_range_root = 0.0;
    /// Root of the four-term condition (c2 or c4); +inf when not applied.
    double high_range_root = 0.0;
    /// Plain existence time the weighted horizon is capped by (weighted only).
    double plain_time = 0.0;
    double margin = 0.0;
    /// False outside alpha, beta in (1/2,1), s in (max{2-2a,2-2b}, 2).
    bool regime_ok = true;
    /// Some exponent is nonpositive, so no small-time guarantee exists.
    bool degenerate = false;
};

/// Largest horizon satisfying every applicable smallness condition.
/// Plain: the low-range condition, plus the four-term one when s >= 1.
/// Weighted: both conditions with the exp(T) factor and c3/c4, capped by the
/// plain time and by exp(T) < 3/2.
ExistenceTime existence_time(double theta0_norm, const DissipParams& p, const ConstantsTable& c, bool weighted);

}  // namespace aqg
