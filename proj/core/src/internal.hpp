#pragma once

#include "aqg/spectral_field.hpp"

namespace aqg::detail {

struct NonlinearEval {
    SpectralField term;
    double max_speed = 0.0;
};

/// div(theta1 u_{theta2}) together with max |u_{theta2}| on the grid.
NonlinearEval evaluate_bilinear(const SpectralField& theta1, const SpectralField& theta2);

/// Throws unless |mean| is at rounding level relative to the field size.
void require_mean_zero(const SpectralField& f, const char* what);

}  // namespace aqg::detail
