#include "aqg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aqg/params.hpp"

namespace aqg {

void GridSpec::validate() const {
    if (n1 < 8 || n1 % 2 != 0) {
        throw std::invalid_argument("grid.n1 must be even and >= 8, got " + std::to_string(n1));
    }
    if (n2 < 8 || n2 % 2 != 0) {
        throw std::invalid_argument("grid.n2 must be even and >= 8, got " + std::to_string(n2));
    }
}

std::string to_string(const GridSpec& grid) {
    return std::to_string(grid.n1) + "x" + std::to_string(grid.n2);
}

void DissipParams::validate() const {
    auto check_open_unit = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0)) {
            std::ostringstream os;
            os << "params." << name << " must lie in (0,1), got " << v;
            throw std::invalid_argument(os.str());
        }
    };
    check_open_unit(alpha, "alpha");
    check_open_unit(beta, "beta");
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("params.mu must be positive");
    }
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("params.nu must be positive");
    }
    if (!std::isfinite(s)) {
        throw std::invalid_argument("params.s must be finite");
    }
}

double DissipParams::critical_index() const { return std::max(2.0 - 2.0 * alpha, 2.0 - 2.0 * beta); }

bool DissipParams::in_theorem_regime() const {
    return alpha > 0.5 && alpha < 1.0 && beta > 0.5 && beta < 1.0 && s > critical_index() && s < 2.0;
}

std::string to_string(const DissipParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha=" << p.alpha << " beta=" << p.beta << " mu=" << p.mu << " nu=" << p.nu << " s=" << p.s;
    return os.str();
}

}  // namespace aqg
