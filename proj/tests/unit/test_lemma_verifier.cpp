#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "aqg/lemmas.hpp"
#include "aqg/norms.hpp"

using namespace aqg;

namespace {

const InequalityReport& find(const std::vector<InequalityReport>& reports, const std::string& id) {
    for (const auto& r : reports) {
        if (r.id == id) {
            return r;
        }
    }
    throw std::out_of_range(id);
}

double sub(const InequalityReport& r, const std::string& label) {
    for (const auto& [k, v] : r.sub_constants) {
        if (k == label) {
            return v;
        }
    }
    throw std::out_of_range(label);
}

SpectralField sine_x1(GridSpec g) {
    const SpectralField::SineMode m{{1, 0}, 1.0, 0.0};
    return SpectralField::from_sines(g, std::span(&m, 1));
}

}  // namespace

TEST(ScalarSuite, NoViolationsAndKnownConstants) {
    const DissipParams p{0.75, 0.75, 0.5, 2.0, 1.0};
    const auto reports = scalar_inequality_suite(p, 1000);
    std::size_t samples = 0;
    for (const auto& r : reports) {
        EXPECT_EQ(r.violations, 0u) << r.id;
        samples += r.samples;
    }
    EXPECT_GE(samples, 1'000'000u);

    // sup x e^{-x} = 1/e against the bound 1.
    const auto& exp_bound = find(reports, "exponential_bound");
    EXPECT_NEAR(sub(exp_bound, "a=1,r=1"), std::exp(-1.0), 1e-12);
    // sup x^a e^{-rx} r^a / a^a = e^{-a} for every r.
    EXPECT_NEAR(sub(exp_bound, "a=0.5,r=2"), std::exp(-0.5), 1e-12);

    // Upper endpoint 2^{1-a} is attained on the diagonal.
    const auto& mult = find(reports, "multiplier_equivalence");
    EXPECT_NEAR(sub(mult, "a=0.75"), 1.0, 1e-14);
    EXPECT_NEAR(sub(mult, "a=0.75 min ratio"), 1.0, 1e-14);

    // A - B = -2 exactly at k = (1, 1).
    const auto& ab = find(reports, "dissipation_minus_gevrey");
    EXPECT_NEAR(ab.worst_ratio, 1.0, 1e-15);
    EXPECT_LT(sub(ab, "identity residual"), 1e-12);

    EXPECT_LE(find(reports, "subadditivity").worst_ratio, 1.0);
    EXPECT_LE(find(reports, "weight_domination").worst_ratio, 1.0);
}

TEST(ScalarSuite, AnisotropicParameters) {
    const DissipParams p{0.6, 0.9, 1.0, 1.0, 1.0};
    for (const auto& r : scalar_inequality_suite(p, 1000)) {
        EXPECT_EQ(r.violations, 0u) << r.id;
    }
}

TEST(ScalarSuite, RejectsSparseGrids) {
    EXPECT_THROW(scalar_inequality_suite(DissipParams{}, 999), std::invalid_argument);
}

TEST(ProductLaw, SineSquaredClosedForm) {
    const GridSpec g{16, 16};
    const auto f = sine_x1(g);
    const auto fg = oversampled_product(f, f);
    // sin^2 = (1 - cos 2x)/2: mean 1/2 and ||.||_{H^0 homogeneous} = 1/(2 sqrt 2).
    EXPECT_NEAR(fg.mean().real(), 0.5, 1e-15);
    EXPECT_NEAR(sobolev_norm(fg, 0.0, true), 1.0 / (2.0 * std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(product_law_ratio(f, f, 0.5, 0.5, false), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(product_law_ratio(f, f, 0.5, 0.5, true), 0.5 / std::sqrt(2.0), 1e-14);
}

TEST(FunctionalSuite, SmallEnsembleIsClean) {
    FieldEnsembleSpec spec{21, 40, 10, 1.5};
    FunctionalSuiteOptions opt;
    opt.grid = {32, 32};
    const DissipParams p{0.75, 0.8, 1.0, 1.0, 1.0};
    const auto reports = functional_inequality_suite(spec, p, opt);
    EXPECT_EQ(total_violations(reports), 0u);

    const auto& cz = find(reports, "calderon_zygmund");
    EXPECT_NEAR(sub(cz, "p=2"), 1.0, 1e-12);
    for (const char* label : {"p=1.5", "p=3", "p=4"}) {
        const double c = sub(cz, label);
        EXPECT_TRUE(std::isfinite(c));
        EXPECT_GT(c, 0.5);
    }
    const auto& inj = find(reports, "sobolev_injection");
    EXPECT_NEAR(sub(inj, "sigma=0,p=2"), 1.0, 1e-12);
    const auto& prod = find(reports, "product_law");
    EXPECT_GT(prod.skipped, 0u);
    EXPECT_TRUE(std::isfinite(prod.empirical_constant));
    EXPECT_EQ(find(reports, "anisotropic_bound").skipped, 0u);
}

TEST(FunctionalSuite, InterpolationIsExactOnSingleMode) {
    const GridSpec g{16, 16};
    const SpectralField::SineMode m{{3, 2}, 0.7, 0.2};
    const auto f = SpectralField::from_sines(g, std::span(&m, 1));
    for (bool homogeneous : {false, true}) {
        const double lhs = sobolev_norm(f, 0.5 * 0.2 + 0.5 * 1.5, homogeneous);
        const double rhs = std::sqrt(sobolev_norm(f, 0.2, homogeneous) * sobolev_norm(f, 1.5, homogeneous));
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-12);
    }
}

TEST(FunctionalSuite, CorruptedNormIsCaught) {
    FieldEnsembleSpec spec{21, 5, 10, 1.5};
    FunctionalSuiteOptions opt;
    opt.grid = {32, 32};
    opt.corrupt_factor = 1.5;
    const auto reports = functional_inequality_suite(spec, DissipParams{}, opt);
    const auto& interp = find(reports, "interpolation_homogeneous");
    EXPECT_GT(interp.violations, 0u);
    ASSERT_FALSE(interp.reproductions.empty());
    EXPECT_EQ(interp.reproductions.front().seed, 21u);
    EXPECT_EQ(interp.reproductions.front().index, 0u);
}

TEST(FunctionalSuite, AnisotropicBoundSkippedWhenAlphaExceedsBeta) {
    FieldEnsembleSpec spec{21, 3, 10, 1.5};
    FunctionalSuiteOptions opt;
    opt.grid = {32, 32};
    const auto reports = functional_inequality_suite(spec, DissipParams{0.9, 0.6, 1.0, 1.0, 1.0}, opt);
    const auto& r = find(reports, "anisotropic_bound");
    EXPECT_EQ(r.samples, 0u);
    EXPECT_EQ(r.skipped, 1u);
}

TEST(FunctionalSuite, ThreadCountDoesNotChangeResults) {
    FieldEnsembleSpec spec{8, 12, 10, 1.5};
    FunctionalSuiteOptions one;
    one.grid = {32, 32};
    FunctionalSuiteOptions many = one;
    many.threads = 3;
    const auto a = functional_inequality_suite(spec, DissipParams{}, one);
    const auto b = functional_inequality_suite(spec, DissipParams{}, many);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].worst_ratio, b[i].worst_ratio);
        EXPECT_EQ(a[i].sub_constants, b[i].sub_constants);
    }
}

TEST(FunctionalSuite, ConstantsGrowWithEnsembleAndStayStable) {
    FunctionalSuiteOptions opt;
    opt.grid = {32, 32};
    const DissipParams p{};
    const FieldEnsembleSpec small{31, 200, 10, 1.5};
    FieldEnsembleSpec large = small;
    large.count = 1000;
    FieldEnsembleSpec disjoint = large;
    disjoint.seed = 32;
    const auto a = functional_inequality_suite(small, p, opt);
    const auto b = functional_inequality_suite(large, p, opt);
    const auto c = functional_inequality_suite(disjoint, p, opt);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_LE(a[i].empirical_constant, b[i].empirical_constant) << a[i].id;
        if (!b[i].constant_free && b[i].samples > 0) {
            const double drift = std::abs(b[i].empirical_constant - c[i].empirical_constant) / b[i].empirical_constant;
            EXPECT_LT(drift, 0.1) << b[i].id;
        }
    }
}
