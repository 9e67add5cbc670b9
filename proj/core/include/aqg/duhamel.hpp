#pragma once

#include <cstddef>

#include "aqg/params.hpp"
#include "aqg/spectral_field.hpp"

namespace aqg {

/// Uniform nodes t_j = j T / (nodes - 1), j = 0 .. nodes-1.
struct TimeGrid {
    double T = 1.0;
    std::size_t nodes = 64;

    void validate() const;
    double step() const { return T / static_cast<double>(nodes - 1); }
    double at(std::size_t j) const { return static_cast<double>(j) * step(); }
};

/// L0(t_j) = exp(-t_j A(D)) theta0 at every node.
Trajectory linear_trajectory(const SpectralField& theta0, const TimeGrid& times, const DissipParams& p);

/// B(a, b)(t_j) = int_0^{t_j} exp(-(t_j - tau) A(D)) div(a(tau) u_{b(tau)}) dtau,
/// by the trapezoid rule on the nodes. Zero at t = 0.
Trajectory duhamel_bilinear(const Trajectory& traj1, const Trajectory& traj2, const TimeGrid& times,
                            const DissipParams& p);

}  // namespace aqg
