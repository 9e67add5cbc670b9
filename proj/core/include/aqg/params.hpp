#pragma once

#include <string>

namespace aqg {

/// Dissipation exponents, coefficients and working Sobolev index.
///
/// The evolution is  d_t theta + u . grad theta + (mu |d_1|^{2 alpha} + nu |d_2|^{2 beta}) theta = 0
/// with u the perpendicular Riesz transform of theta.
struct DissipParams {
    double alpha = 0.75;
    double beta = 0.75;
    double mu = 1.0;
    double nu = 1.0;
    double s = 1.0;

    /// Throws std::invalid_argument naming the offending field when
    /// alpha, beta are outside (0,1) or mu, nu are not positive.
    void validate() const;

    /// alpha, beta in (1/2, 1) and s in (max{2-2alpha, 2-2beta}, 2).
    /// Outside this regime the local theory gives no guarantee but every
    /// construction still runs.
    bool in_theorem_regime() const;

    /// Lower end of the admissible Sobolev interval, max{2-2alpha, 2-2beta}.
    double critical_index() const;
};

std::string to_string(const DissipParams& p);

}  // namespace aqg
