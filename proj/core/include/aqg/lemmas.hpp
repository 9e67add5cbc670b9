#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "aqg/ensemble.hpp"
#include "aqg/params.hpp"

namespace aqg {

/// Enough to redo one failing evaluation.
struct ViolationRecord {
    std::uint64_t seed = 0;
    std::size_t index = 0;
    std::string case_label;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct InequalityReport {
    std::string id;
    /// Violations of a theorem-backed inequality are bugs, not findings.
    bool theorem_backed = true;
    /// The inequality holds with constant 1, so any ratio above 1 is a violation.
    bool constant_free = true;
    std::size_t samples = 0;
    /// Parameter cases dropped because they break the hypotheses.
    std::size_t skipped = 0;
    /// Largest LHS / RHS with the constant stripped.
    double worst_ratio = 0.0;
    /// Largest ratio per parameter case, in evaluation order.
    std::vector<std::pair<std::string, double>> sub_constants;
    double empirical_constant = 0.0;
    std::size_t violations = 0;
    /// The first few violations (at most kMaxViolationRecords).
    std::vector<ViolationRecord> reproductions;
};

inline constexpr std::size_t kMaxViolationRecords = 16;
inline constexpr double kRatioSlack = 1e-12;
inline constexpr std::size_t kMinGridDensity = 1000;

/// Pointwise inequalities over scalar domains: subadditivity of |x|^r and of
/// the Gevrey symbol, the bound x^a exp(-r x) <= a^a / r^a, the multiplier
/// equivalence |k1|^{2a} + |k2|^{2a} ~ |k|^{2a}, A - B >= -2 and the per-mode
/// weight domination. The last two take mu = nu = 1. Throws if grid_density
/// is below kMinGridDensity.
std::vector<InequalityReport> scalar_inequality_suite(const DissipParams& p, std::size_t grid_density = 1000);

struct FunctionalSuiteOptions {
    GridSpec grid{64, 64};
    std::size_t threads = 1;
    /// Test hook: multiplies the left side of every constant-free check.
    double corrupt_factor = 1.0;
};

/// Norm inequalities evaluated on ensemble samples 0..count-1, with g taken
/// as the sample after f. Products are formed on a grid twice as fine.
std::vector<InequalityReport> functional_inequality_suite(const FieldEnsembleSpec& spec, const DissipParams& p,
                                                          const FunctionalSuiteOptions& options = {});

/// ||fg||_{H^{s1+s2-1}} over ||f||_{H^{s1}} ||g||_{H^{s2}} (+ the swapped
/// product when symmetric), all homogeneous. Exposed for closed-form checks.
double product_law_ratio(const SpectralField& f, const SpectralField& g, double s1, double s2, bool symmetric);

/// Pointwise product of two fields, exact for fields in the 2/3 band.
SpectralField oversampled_product(const SpectralField& f, const SpectralField& g);

std::size_t total_violations(const std::vector<InequalityReport>& reports, bool theorem_backed_only = true);

}  // namespace aqg
