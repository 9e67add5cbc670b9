#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aqg/ensemble.hpp"
#include "aqg/spectral_ops.hpp"
#include "aqg/transform.hpp"
#include "oracles.hpp"

using namespace aqg;

namespace {

SpectralField sines(GridSpec g, std::initializer_list<SpectralField::SineMode> modes) {
    std::vector<SpectralField::SineMode> v(modes);
    return SpectralField::from_sines(g, v);
}

}  // namespace

TEST(Grid, RejectsOddOrTinyCounts) {
    EXPECT_THROW((GridSpec{15, 16}.validate()), std::invalid_argument);
    EXPECT_THROW((GridSpec{4, 4}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((GridSpec{8, 16}.validate()));
}

TEST(Grid, WavenumberOrderingRoundTrips) {
    const GridSpec g{8, 12};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.wavenumber_at(i);
        EXPECT_TRUE(g.contains(k));
        EXPECT_EQ(g.index_of(k), i);
        const auto c = g.wavenumber_at(g.conjugate_index(i));
        if (std::abs(k.k1) != g.n1 / 2 && std::abs(k.k2) != g.n2 / 2) {
            EXPECT_EQ(c, (Wavenumber{-k.k1, -k.k2}));
        }
    }
    EXPECT_EQ(g.wavenumber1(4), 4);
    EXPECT_EQ(g.wavenumber1(5), -3);
}

TEST(Grid, TwoThirdsBand) {
    const GridSpec g{64, 64};
    EXPECT_EQ(g.dealias_kmax(), 21);
    EXPECT_TRUE(g.dealias_retained({21, -21}));
    EXPECT_FALSE(g.dealias_retained({22, 0}));
}

TEST(SpectralField, SineCoefficients) {
    const GridSpec g{16, 16};
    const auto f = sines(g, {{{1, 0}, 1.0, 0.0}});
    EXPECT_NEAR(f.at({1, 0}).real(), 0.0, 1e-16);
    EXPECT_NEAR(f.at({1, 0}).imag(), -0.5, 1e-16);
    EXPECT_NEAR(f.at({-1, 0}).imag(), 0.5, 1e-16);
    EXPECT_EQ(f.hermitian_defect(), 0.0);
    EXPECT_EQ(f.mean(), Complex{});
}

TEST(Transform, PhysicalValuesMatchSeriesSum) {
    const GridSpec g{16, 12};
    FieldEnsembleSpec spec{7, 1, 3, 1.0};
    const auto f = random_band_limited_field(spec, g, 0);
    const auto values = to_physical(f);
    for (int i1 = 0; i1 < g.n1; i1 += 3) {
        for (int i2 = 0; i2 < g.n2; i2 += 5) {
            const double x1 = 2.0 * std::numbers::pi * i1 / g.n1;
            const double x2 = 2.0 * std::numbers::pi * i2 / g.n2;
            EXPECT_NEAR(values[g.index(i1, i2)], oracle::point_value(f, x1, x2), 1e-13);
        }
    }
}

TEST(Transform, RoundTripIsExactlyHermitian) {
    const GridSpec g{32, 32};
    FieldEnsembleSpec spec{3, 1, 10, 1.5};
    const auto f = random_band_limited_field(spec, g, 4);
    const auto back = to_spectral(g, to_physical(f));
    EXPECT_LT(oracle::relative_max_diff(back, f), 1e-14);
    EXPECT_EQ(back.hermitian_defect(), 0.0);
}

TEST(Transform, ResamplePadsAndTruncates) {
    const GridSpec coarse{16, 16};
    const GridSpec fine{32, 32};
    FieldEnsembleSpec spec{3, 1, 5, 1.5};
    const auto f = random_band_limited_field(spec, coarse, 0);
    const auto up = resample(f, fine);
    EXPECT_EQ(up.at({5, -5}), f.at({5, -5}));
    EXPECT_EQ(resample(up, coarse), f);
}

TEST(SpectralOps, DissipationSymbolMatchesLongDouble) {
    const DissipParams p{0.7, 0.85, 1.3, 0.4, 1.0};
    for (auto k : std::array<Wavenumber, 4>{{{2, 3}, {-5, 1}, {0, 7}, {11, 0}}}) {
        const long double expect = oracle::dissipation(k.k1, k.k2, 0.7L, 0.85L, 1.3L, 0.4L);
        EXPECT_NEAR(dissipation_symbol(k, p), static_cast<double>(expect), 1e-14 * static_cast<double>(expect));
    }
    const DissipParams q{0.75, 0.75, 1.0, 1.0, 1.0};
    // 2^{1.5} + 3^{1.5}
    EXPECT_NEAR(dissipation_symbol({2, 3}, q), 8.024579547, 1e-8);
    // 2 (2^{0.75} + 3^{0.75})
    EXPECT_NEAR(gevrey_symbol({2, 3}, q), 7.9225997749, 1e-9);
    EXPECT_EQ(dissipation_symbol({0, 0}, q), 0.0);
}

TEST(SpectralOps, SemigroupDecaysEachMode) {
    const GridSpec g{16, 16};
    const DissipParams p{0.75, 0.75, 1.0, 1.0, 1.0};
    const auto f = sines(g, {{{2, 3}, 1.0, 0.3}});
    const auto decayed = apply_semigroup(f, 0.5, p);
    const double factor = std::exp(-0.5 * 8.024579547);
    EXPECT_NEAR(std::abs(decayed.at({2, 3})), factor * std::abs(f.at({2, 3})), 1e-9);
    EXPECT_THROW(apply_semigroup(f, -0.1, p), std::invalid_argument);
    EXPECT_EQ(apply_semigroup(f, 0.0, p), f);
}

TEST(SpectralOps, RieszVelocityOfSine) {
    const GridSpec g{16, 16};
    const auto theta = sines(g, {{{1, 0}, 1.0, 0.0}});
    const auto vel = riesz_velocity(theta);
    EXPECT_TRUE(vel.u1.is_zero());
    // u2 = cos(x1)
    EXPECT_NEAR(vel.u2.at({1, 0}).real(), 0.5, 1e-16);
    EXPECT_NEAR(vel.u2.at({-1, 0}).real(), 0.5, 1e-16);
    auto with_mean = theta;
    with_mean[0] = 1.0;
    EXPECT_THROW(riesz_velocity(with_mean), std::invalid_argument);
}

TEST(SpectralOps, ShearPairHasZeroNonlinearity) {
    const GridSpec g{32, 32};
    const auto theta = sines(g, {{{1, 0}, 1.0, 0.0}, {{0, 1}, 1.0, 0.0}});
    const auto n = nonlinear_term(theta);
    double worst = 0.0;
    for (auto c : n.coeffs()) {
        worst = std::max(worst, std::abs(c));
    }
    EXPECT_LT(worst, 1e-16);
}

TEST(SpectralOps, BilinearTermMatchesDirectConvolution) {
    const GridSpec g{16, 16};
    FieldEnsembleSpec spec{11, 2, 5, 1.0};
    const auto a = random_band_limited_field(spec, g, 0);
    const auto b = random_band_limited_field(spec, g, 1);
    const auto fast = bilinear_term(a, b);
    const auto slow = oracle::convolution_bilinear(a, b);
    EXPECT_LT(oracle::relative_max_diff(fast, slow), 1e-13);
    EXPECT_EQ(fast.hermitian_defect(), 0.0);
    EXPECT_EQ(fast.mean(), Complex{});
}

TEST(SpectralOps, ProductInputsAreDealiased) {
    const GridSpec g{16, 16};
    // Mode 7 lies outside the retained band |k| <= 5 and must not contribute.
    const auto a = sines(g, {{{1, 2}, 1.0, 0.0}, {{7, 0}, 3.0, 0.0}});
    const auto b = sines(g, {{{2, 1}, 1.0, 0.0}});
    const auto clean = sines(g, {{{1, 2}, 1.0, 0.0}});
    EXPECT_LT(oracle::relative_max_diff(bilinear_term(a, b), bilinear_term(clean, b)), 1e-15);
}

TEST(SpectralOps, NonlinearTermIsOrthogonalToTheta) {
    const GridSpec g{32, 32};
    FieldEnsembleSpec spec{5, 1, 10, 1.2};
    const auto theta = random_band_limited_field(spec, g, 0);
    const auto n = nonlinear_term(theta);
    double inner = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        inner += (n[i] * std::conj(theta[i])).real();
        scale += std::abs(n[i]) * std::abs(theta[i]);
    }
    EXPECT_LT(std::abs(inner), 1e-14 * scale);
}

TEST(SpectralOps, DealiasZeroesOutsideBand) {
    const GridSpec g{12, 12};
    FieldEnsembleSpec spec{1, 1, 4, 0.0};
    auto f = random_band_limited_field(spec, g, 0);
    f.set_hermitian({5, 1}, {1.0, 2.0});
    const auto d = dealias(f);
    EXPECT_EQ(d.at({5, 1}), Complex{});
    EXPECT_EQ(d.at({4, -4}), f.at({4, -4}));
}

TEST(SpectralOps, MaxSpeedOfShear) {
    const GridSpec g{16, 16};
    const auto theta = sines(g, {{{1, 0}, 2.0, 0.0}});
    EXPECT_NEAR(max_speed(theta), 2.0, 1e-14);
}
