#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "aqg/ensemble.hpp"
#include "aqg/norms.hpp"
#include "aqg/spectral_ops.hpp"

using namespace aqg;

namespace {

SpectralField sine_x1(GridSpec g, double amplitude = 1.0) {
    const SpectralField::SineMode m{{1, 0}, amplitude, 0.0};
    return SpectralField::from_sines(g, std::span(&m, 1));
}

}  // namespace

TEST(SobolevNorm, SingleModeClosedForm) {
    const GridSpec g{16, 16};
    const auto f = sine_x1(g);
    for (double s : {-0.5, 0.0, 1.0, 1.7}) {
        EXPECT_NEAR(sobolev_norm(f, s), std::sqrt(std::pow(2.0, s - 1.0)), 1e-15);
        EXPECT_NEAR(sobolev_norm(f, s, true), std::sqrt(0.5), 1e-15);
    }
    EXPECT_NEAR(l2_norm(f), std::sqrt(0.5), 1e-15);
}

TEST(SobolevNorm, HomogeneousIgnoresMean) {
    const GridSpec g{8, 8};
    auto f = SpectralField::zeros(g);
    f[0] = 3.0;
    EXPECT_EQ(sobolev_norm(f, 1.0, true), 0.0);
    EXPECT_NEAR(sobolev_norm(f, 1.0), 3.0, 1e-15);
}

TEST(SobolevNorm, ParsevalAgainstGridQuadrature) {
    const GridSpec g{32, 32};
    FieldEnsembleSpec spec{9, 1, 10, 1.0};
    const auto f = random_band_limited_field(spec, g, 0);
    EXPECT_NEAR(lp_norm(f, 2.0), l2_norm(f), 1e-14 * l2_norm(f));
}

TEST(LpNorm, SineClosedForms) {
    const GridSpec g{32, 32};
    const auto f = sine_x1(g);
    EXPECT_NEAR(lp_norm(f, 2.0), std::sqrt(0.5), 1e-15);
    // mean sin^4 = 3/8
    EXPECT_NEAR(lp_norm(f, 4.0), std::pow(3.0 / 8.0, 0.25), 1e-15);
    EXPECT_THROW(lp_norm(f, 1.0), std::invalid_argument);
    EXPECT_THROW(lp_norm(f, INFINITY), std::invalid_argument);
}

TEST(GevreyWeightedNorm, ZeroAndSingleMode) {
    const GridSpec g{16, 16};
    const DissipParams p{0.75, 0.75, 1.0, 1.0, 1.0};
    EXPECT_EQ(gevrey_weighted_norm(SpectralField::zeros(g), 1.0, 1.0, p).value, 0.0);
    // B(1,0) = 2, so the weight is e^t.
    const auto f = sine_x1(g);
    EXPECT_NEAR(gevrey_weighted_norm(f, 0.3, 1.0, p).value, std::exp(0.3) * sobolev_norm(f, 1.0), 1e-14);
    EXPECT_THROW(gevrey_weighted_norm(f, -1.0, 1.0, p), std::invalid_argument);
}

TEST(GevreyWeightedNorm, SaturationIsFlagged) {
    const GridSpec g{16, 16};
    const DissipParams p{0.75, 0.75, 1.0, 1.0, 1.0};
    const auto f = sine_x1(g);
    const auto w = gevrey_weighted_norm(f, 800.0, 1.0, p);
    EXPECT_TRUE(w.saturated);
    ASSERT_TRUE(w.offending.has_value());
    EXPECT_EQ(std::abs(w.offending->k1), 1);
    EXPECT_FALSE(gevrey_weighted_norm(f, 1.0, 1.0, p).saturated);
}

TEST(GevreySobolevNorm, MatchesDirectSum) {
    const GridSpec g{16, 16};
    const auto f = sine_x1(g);
    // Two modes with |k| = 1: 2 * (1/4) * e^{2a} * 2^s
    const double a = 0.4;
    const double s = 1.5;
    EXPECT_NEAR(gevrey_sobolev_norm(f, a, 2.0, s), std::sqrt(0.5 * std::exp(2.0 * a) * std::pow(2.0, s)), 1e-14);
}

TEST(DirectionalSeminorm, SeparatesAxes) {
    const GridSpec g{16, 16};
    const auto f = sine_x1(g);
    EXPECT_NEAR(directional_seminorm(f, Axis::x1, 0.75, 0.0), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(directional_seminorm(f, Axis::x2, 0.75, 0.0), 0.0);
    const SpectralField::SineMode m{{2, 3}, 1.0, 0.0};
    const auto h = SpectralField::from_sines(g, std::span(&m, 1));
    const double expect = std::sqrt(0.5 * std::pow(13.0, 0.5) * std::pow(3.0, 1.6));
    EXPECT_NEAR(directional_seminorm(h, Axis::x2, 0.8, 0.5), expect, 1e-13);
}

TEST(Ensemble, DeterministicHermitianMeanZero) {
    const GridSpec g{32, 32};
    FieldEnsembleSpec spec{42, 10, 10, 1.5};
    const auto a = random_band_limited_field(spec, g, 3);
    const auto b = random_band_limited_field(spec, g, 3);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, random_band_limited_field(spec, g, 4));
    EXPECT_EQ(a.hermitian_defect(), 0.0);
    EXPECT_EQ(a.mean(), Complex{});
}

TEST(Ensemble, SpectrumAndSupport) {
    const GridSpec g{32, 32};
    FieldEnsembleSpec spec{42, 1, 1, 2.0};
    const auto f = random_band_limited_field(spec, g, 0);
    std::set<std::pair<int, int>> support;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::abs(f[i]) > 0.0) {
            const auto k = g.wavenumber_at(i);
            support.insert({k.k1, k.k2});
            const double mag = std::hypot(k.k1, k.k2);
            EXPECT_NEAR(std::abs(f[i]), std::pow(mag, -2.0), 1e-15);
        }
    }
    EXPECT_EQ(support.size(), 8u);
}

TEST(Ensemble, SameSampleAcrossGrids) {
    FieldEnsembleSpec spec{5, 1, 10, 1.5};
    const auto a = random_band_limited_field(spec, {32, 32}, 0);
    const auto b = random_band_limited_field(spec, {64, 64}, 0);
    EXPECT_EQ(a.at({7, -3}), b.at({7, -3}));
    EXPECT_EQ(a.at({-10, 10}), b.at({-10, 10}));
}

TEST(Ensemble, ValidatesBand) {
    FieldEnsembleSpec spec{5, 1, 30, 1.5};
    EXPECT_THROW(spec.validate({64, 64}), std::invalid_argument);
    spec.kmax = 21;
    EXPECT_NO_THROW(spec.validate({64, 64}));
    spec.count = 0;
    EXPECT_THROW(spec.validate({64, 64}), std::invalid_argument);
}

TEST(Ensemble, RoughSpectrumH2GrowthExponent) {
    // |fhat| = |k|^{-2.5} on the full 2/3 band: ||f||_{H^2}^2 ~ sum 1/|k| ~ N.
    FieldEnsembleSpec spec{3, 1, 0, 2.5};
    double prev = 0.0;
    for (int n : {64, 128, 256}) {
        spec.kmax = n / 3;
        const double h2 = sobolev_norm(random_band_limited_field(spec, {n, n}, 0), 2.0);
        if (prev > 0.0) {
            EXPECT_NEAR(std::log2(h2 / prev), 0.5, 0.1);
        }
        prev = h2;
    }
}
