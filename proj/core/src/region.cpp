#include "aqg/region.hpp"

#include <stdexcept>

namespace aqg {

std::string_view to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::Y1: return "Y1";
        case RegionLabel::Y2: return "Y2";
        case RegionLabel::Y3: return "Y3";
        case RegionLabel::outside: return "outside";
    }
    return "outside";
}

bool satisfies_condition_p(double alpha, double beta) {
    if (alpha <= 0.5) {
        return beta > 1.0 / (2.0 * alpha + 1.0);
    }
    return beta > (1.0 - alpha) / (2.0 * alpha);
}

RegionLabel region_classify(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("region_classify: (alpha, beta) must lie in (0,1)^2");
    }
    if (alpha > 0.5) {
        if (beta > 0.5) {
            return RegionLabel::Y1;
        }
        if (beta > (1.0 - alpha) / (2.0 * alpha)) {
            return RegionLabel::Y2;
        }
        return RegionLabel::outside;
    }
    if (beta > 1.0 / (2.0 * alpha + 1.0)) {
        return RegionLabel::Y3;
    }
    return RegionLabel::outside;
}

}  // namespace aqg
