#pragma once

#include <string_view>

namespace aqg {

/// Parts of the (alpha, beta) plane where global regularity is known.
enum class RegionLabel { Y1, Y2, Y3, outside };

std::string_view to_string(RegionLabel label);

/// beta > 1/(2 alpha + 1) for alpha <= 1/2, beta > (1 - alpha)/(2 alpha) otherwise.
bool satisfies_condition_p(double alpha, double beta);

/// Y1 = (1/2,1)^2; Y2: alpha in (1/2,1), beta in ((1-alpha)/(2 alpha), 1/2];
/// Y3: alpha in (0,1/2], beta in (1/(2 alpha + 1), 1). Throws std::invalid_argument
/// outside (0,1)^2.
RegionLabel region_classify(double alpha, double beta);

}  // namespace aqg
