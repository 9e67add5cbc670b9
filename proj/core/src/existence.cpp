#include "aqg/existence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aqg {

void ConstantsTable::validate() const {
    const double values[] = {c1, c2, c3, c4};
    const char* names[] = {"C1", "C2", "C3", "C4"};
    for (int i = 0; i < 4; ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw std::invalid_argument(std::string("constants.") + names[i] + " must be positive and finite");
        }
    }
}

double estimate_margin(const DissipParams& p) {
    const double from_alpha = 0.5 * (2.0 * p.alpha - 1.0);
    if (from_alpha < 2.0 * p.beta - 1.0) {
        return from_alpha;
    }
    return 0.5 * (2.0 * p.beta - 1.0);
}

std::vector<double> low_range_exponents(const DissipParams& p) {
    return {(p.s - 2.0 + 2.0 * p.alpha) / (2.0 * p.alpha), (p.s - 2.0 + 2.0 * p.beta) / (2.0 * p.beta)};
}

std::vector<double> high_range_exponents(const DissipParams& p) {
    const double eps = estimate_margin(p);
    return {
        (2.0 * p.alpha - 1.0) / (2.0 * p.alpha),
        (2.0 * p.beta - 1.0) / (2.0 * p.beta),
        (2.0 * p.alpha - 1.0 - eps) / (2.0 * p.alpha),
        (2.0 * p.beta - 1.0 - eps) / (2.0 * p.beta),
    };
}

double smallness_sum(std::span<const double> exponents, double T, double rate) {
    double sum = 0.0;
    for (double a : exponents) {
        sum += std::pow(T, a);
    }
    return sum * std::exp(rate * T);
}

double largest_admissible_time(std::span<const double> exponents, double rhs, double rate, double cap) {
    if (exponents.empty()) {
        throw std::invalid_argument("largest_admissible_time: no exponents");
    }
    for (double a : exponents) {
        if (!(a > 0.0)) {
            throw std::domain_error("largest_admissible_time: exponents must be positive");
        }
    }
    if (!(rhs > 0.0)) {
        return 0.0;
    }
    if (std::isinf(rhs)) {
        return cap;
    }
    if (std::isfinite(cap) && smallness_sum(exponents, cap, rate) <= rhs) {
        return cap;
    }
    double lo = 0.0;
    double hi = std::isfinite(cap) ? cap : 1.0;
    while (!std::isfinite(cap) && smallness_sum(exponents, hi, rate) <= rhs) {
        lo = hi;
        hi *= 2.0;
    }
    // shrink hi geometrically first so tiny roots still get relative precision
    if (lo == 0.0) {
        while (smallness_sum(exponents, 0.5 * hi, rate) > rhs && hi > 1e-300) {
            hi *= 0.5;
        }
        lo = 0.5 * hi;
    }
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (smallness_sum(exponents, mid, rate) <= rhs) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double weighted_time_cap() { return std::nextafter(std::log(1.5), 0.0); }

namespace {

bool all_positive(const std::vector<double>& exponents) {
    return std::all_of(exponents.begin(), exponents.end(), [](double a) { return a > 0.0; });
}

}  // namespace

ExistenceTime existence_time(double theta0_norm, const DissipParams& p, const ConstantsTable& c, bool weighted) {
    p.validate();
    c.validate();
    if (!(theta0_norm >= 0.0)) {
        throw std::invalid_argument("existence_time: norm must be nonnegative");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    ExistenceTime out;
    out.regime_ok = p.in_theorem_regime();
    out.margin = estimate_margin(p);

    const auto low = low_range_exponents(p);
    const auto high = high_range_exponents(p);
    const bool use_high = weighted || p.s >= 1.0;
    out.degenerate = !all_positive(low) || (use_high && !all_positive(high));
    if (out.degenerate) {
        out.T = out.low_range_root = out.high_range_root = out.plain_time = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    auto plain = [&]() {
        if (theta0_norm == 0.0) {
            return inf;
        }
        const double t_low = largest_admissible_time(low, 1.0 / (8.0 * c.c1 * theta0_norm));
        const double t_high =
            p.s >= 1.0 ? largest_admissible_time(high, 1.0 / (8.0 * c.c2 * theta0_norm)) : inf;
        if (!weighted) {
            out.low_range_root = t_low;
            out.high_range_root = t_high;
        }
        return std::min(t_low, t_high);
    };

    const double t_plain = plain();
    if (!weighted) {
        out.T = t_plain;
        out.plain_time = t_plain;
        return out;
    }

    const double cap = std::min(t_plain, weighted_time_cap());
    out.plain_time = t_plain;
    if (theta0_norm == 0.0) {
        out.low_range_root = out.high_range_root = cap;
        out.T = cap;
        return out;
    }
    out.low_range_root = largest_admissible_time(low, 1.0 / (8.0 * c.c3 * theta0_norm), 1.0, cap);
    out.high_range_root = largest_admissible_time(high, 1.0 / (8.0 * c.c4 * theta0_norm), 1.0, cap);
    out.T = std::min({cap, out.low_range_root, out.high_range_root});
    return out;
}

}  // namespace aqg
