#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqg/norms.hpp"
#include "aqg/params.hpp"
#include "aqg/spectral_field.hpp"

namespace aqg {

/// gevrey_weighted_norm at each node, with weight time equal to the node time.
std::vector<WeightedNorm> weighted_norm_trace(const Trajectory& traj, std::span<const double> times,
                                              const DissipParams& p, double s);

inline constexpr double kFitNoiseFloor = 1e-14;
inline constexpr std::size_t kMinFitModes = 5;

struct AxisFit {
    /// Slope of log|f_t/f_0| against -|k|^{2 exponent}; t * mu for linear decay.
    double rate = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual of the fit.
    double residual = 0.0;
    std::size_t modes = 0;
};

/// Fits along k2 = 0 (rate against |k1|^{2 alpha}) and k1 = 0 (against
/// |k2|^{2 beta}). An axis with fewer than kMinFitModes modes above the noise
/// floor in both fields is left empty rather than guessed.
struct RadiusFit {
    std::optional<AxisFit> axis1;
    std::optional<AxisFit> axis2;
};

RadiusFit analyticity_radius_fit(const SpectralField& f_t, const SpectralField& f_0, double t, const DissipParams& p);

struct H2SmoothingReport {
    std::size_t node = 0;
    double t0 = 0.0;
    double margin = 0.0;
    double h2_norm = 0.0;
    /// sup_k (1+|k|^2)^{4-2s} exp(-(t0 - margin) B(k)) over retained modes.
    double weight_sup = 0.0;
    /// 1 + tau^{-(8-4s)/alpha} + tau^{-(8-4s)/beta}, tau = t0 - margin.
    double weight_shape = 0.0;
    /// weight_sup / weight_shape: the constant the bound needs at this t0.
    double weight_constant = 0.0;
    /// max ||theta(t_{j +- 1}) - theta(t_j)||_{H^2} over the neighboring nodes.
    double continuity_modulus = 0.0;
};

/// Interior-time H^2 diagnostics on a sampled trajectory. Throws
/// std::invalid_argument if t0 is not strictly inside the sampled span.
H2SmoothingReport h2_smoothing_check(const Trajectory& traj, std::span<const double> times, double t0,
                                     const DissipParams& p, double s);

/// Exponents of the three expressions exp(t|k|^alpha), exp(t(|k1|^alpha + |k2|^beta)),
/// exp(2t|k|^beta).
struct RemarkChainTerms {
    double left = 0.0;
    double middle = 0.0;
    double right = 0.0;
};

RemarkChainTerms remark_chain_terms(double xi1, double xi2, double t, const DissipParams& p);

struct ChainLink {
    std::string name;
    std::size_t samples = 0;
    std::size_t violations = 0;
    /// Smallest right-minus-left over the scan (negative means violated).
    double min_slack = std::numeric_limits<double>::infinity();
};

struct RemarkChainReport {
    double t_max = 0.0;
    double T0 = 0.0;
    bool alpha_le_beta = true;
    /// The four pointwise links between |k|^alpha and 2|k|^beta + 2.
    std::vector<ChainLink> scalar_links;
    /// exp(-T0) exp(t|k|^alpha) <= middle and middle <= exp(T0) exp(2t|k|^beta).
    ChainLink lower;
    ChainLink upper;
    /// Largest t(|k|^alpha - |k1|^alpha - |k2|^beta): the slack the lower bound uses.
    double lower_needed = 0.0;
    /// Largest t(|k1|^alpha + |k2|^beta - 2|k|^beta): the slack the upper bound uses.
    double upper_needed = 0.0;

    std::size_t exponential_violations() const { return lower.violations + upper.violations; }
};

/// Scans k in [-kmax, kmax]^2 \ {0} and t at t_samples points of [0, min(T0, T1)].
RemarkChainReport remark_chain_check(const DissipParams& p, double T0, std::size_t t_samples,
                                     double T1 = std::numeric_limits<double>::infinity(), int kmax = 128);

}  // namespace aqg
