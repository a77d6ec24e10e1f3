#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "mazer/analytic_scattering.hpp"
#include "support/generators.hpp"
#include "support/stationary_oracle.hpp"

using namespace mazer;

namespace {

constexpr double pi = std::numbers::pi;

double unitarity_defect(const DressedCoefficients& d) {
    return std::max(std::abs(std::norm(d.rho_plus) + std::norm(d.tau_plus) - 1.0),
                    std::abs(std::norm(d.rho_minus) + std::norm(d.tau_minus) - 1.0));
}

double p_meza(double k, double l, int n = 0) {
    return transmission_probability(bare_from_dressed(meza_dressed(k, n, 1.0, l)));
}

double max_diff(const DressedCoefficients& a, const oracle::Amplitudes& plus, const oracle::Amplitudes& minus) {
    return std::max({std::abs(a.rho_plus - plus.r), std::abs(a.tau_plus - plus.t), std::abs(a.rho_minus - minus.r),
                     std::abs(a.tau_minus - minus.t)});
}

}  // namespace

// ---------------------------------------------------------------------------
// Wavenumbers

TEST(ChannelWavenumbers, BranchConventions) {
    const auto below = channel_wavenumbers(0.5, 0, 1.0);
    EXPECT_NEAR(below.kappa, std::sqrt(2.0), 1e-15);
    EXPECT_EQ(below.k_plus.real(), 0.0);
    EXPECT_NEAR(below.k_plus.imag(), std::sqrt(2.0 - 0.25), 1e-15);
    EXPECT_NEAR(below.k_minus, std::sqrt(2.25), 1e-15);
    const auto above = channel_wavenumbers(3.0, 3, 1.0);
    EXPECT_NEAR(above.kappa_n, std::sqrt(2.0) * std::pow(4.0, 0.25), 1e-14);
    EXPECT_NEAR(above.k_plus.real(), std::sqrt(9.0 - 4.0), 1e-14);
    EXPECT_EQ(above.k_plus.imag(), 0.0);
    EXPECT_GE(above.k_minus, above.k);
}

// ---------------------------------------------------------------------------
// Meza

TEST(MezaDressed, FreeParticle) {
    for (double k : {0.01, 0.3, 2.0}) {
        const auto d = meza_dressed(k, 0, 0.0, 7.3);
        EXPECT_NEAR(std::abs(d.tau_plus - 1.0), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(d.tau_minus - 1.0), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(d.rho_plus), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(d.rho_minus), 0.0, 1e-14);
    }
}

TEST(MezaDressed, TransparentRepulsiveChannelAtHalfWavelengthMultiples) {
    const double k = 2.0;
    const double q = std::sqrt(k * k - 2.0);
    for (int m = 1; m <= 3; ++m) {
        const auto d = meza_dressed(k, 0, 1.0, m * pi / q);
        EXPECT_NEAR(std::abs(d.tau_plus), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(d.rho_plus), 0.0, 1e-12);
    }
}

TEST(MezaDressed, FirstTunnellingResonanceIsLocalMaximumInLength) {
    const double l1 = pi / std::sqrt(2.0);
    const double h = 0.05;
    EXPECT_GT(p_meza(0.1, l1), p_meza(0.1, l1 - h));
    EXPECT_GT(p_meza(0.1, l1), p_meza(0.1, l1 + h));
}

TEST(MezaDressed, MatchesTransferMatrixOracle) {
    const double k = 2.0, l = 1.0;
    const auto d = meza_dressed(k, 0, 1.0, l);
    EXPECT_LT(max_diff(d, oracle::square(k, 1.0, l), oracle::square(k, -1.0, l)), 1e-10);
}

TEST(MezaDressed, DeepTunnellingStaysFinite) {
    const auto d = meza_dressed(0.01, 0, 1.0, 2000.0);
    EXPECT_TRUE(std::isfinite(std::abs(d.tau_plus)));
    EXPECT_LT(std::abs(d.tau_plus), 1e-300);
    EXPECT_NEAR(std::norm(d.rho_plus), 1.0, 1e-12);
}

TEST(MezaDressed, RejectsInvalidArguments) {
    EXPECT_THROW(meza_dressed(0.0, 0, 1.0, 1.0), InvalidArgument);
    EXPECT_THROW(meza_dressed(1.0, -1, 1.0, 1.0), InvalidArgument);
    EXPECT_THROW(meza_dressed(1.0, 0, -1.0, 1.0), InvalidArgument);
    EXPECT_THROW(meza_dressed(1.0, 0, 1.0, 0.0), InvalidArgument);
}

TEST(MezaDressed, ContinuousAcrossThreshold) {
    for (int n = 0; n <= 3; ++n)
        for (double l : {0.5, 5.0, 50.0}) {
            const double kn = kappa_n(1.0, n);
            const auto at = meza_dressed(kn, n, 1.0, l);
            // slope grows like (k l)^2, so the bound scales with it; a branch jump would be O(1)
            const double tol = 1e-8 * (1.0 + kn * kn * l * l);
            for (double eps : {1e-9, -1e-9}) {
                const auto near = meza_dressed(kn * (1.0 + eps), n, 1.0, l);
                EXPECT_LT(std::abs(near.tau_plus - at.tau_plus), tol) << n << ' ' << l;
                EXPECT_LT(std::abs(near.rho_plus - at.rho_plus), tol) << n << ' ' << l;
            }
        }
}

TEST(MezaDressed, RabiRegimeOnset) {
    const double k0 = std::sqrt(2.0);
    EXPECT_GT(p_meza(k0 + 0.05, 50.0) - p_meza(k0 - 0.05, 50.0), 0.3);
}

// ---------------------------------------------------------------------------
// Sech

TEST(SechDressed, FreeParticleLimit) {
    for (double k : {0.05, 0.7, 2.5}) {
        const auto d = sech_dressed(k, 0, 1e-12, 3.0);
        EXPECT_NEAR(std::abs(d.tau_plus - 1.0), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(d.tau_minus - 1.0), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(d.rho_plus), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(d.rho_minus), 0.0, 1e-9);
    }
    const auto zero = sech_dressed(0.3, 0, 0.0, 3.0);
    EXPECT_NEAR(std::abs(zero.tau_plus - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(zero.rho_minus), 0.0, 1e-12);
}

TEST(SechDressed, ReflectionlessAttractiveChannel) {
    for (int n = 0; n <= 2; ++n) {
        const auto waists = sech_resonance_lengths(n, 1.0, 3);
        for (double L : waists)
            for (double k : {0.05, 0.1, 1.0}) EXPECT_LT(std::abs(sech_dressed(k, n, 1.0, L).rho_minus), 1e-10);
    }
}

TEST(SechDressed, MatchesNumericalIntegration) {
    const double k = 0.1, L = 5.0;
    const auto d = sech_dressed(k, 0, 1.0, L);
    EXPECT_LT(max_diff(d, oracle::sech_squared(k, 1.0, L), oracle::sech_squared(k, -1.0, L)), 1e-6);
}

TEST(SechDressed, WideModeTransmitsHalf) {
    // wide attractive channel transmits fully, the repulsive one reflects
    const auto d = sech_dressed(0.1, 0, 1.0, 20.0);
    EXPECT_LT(std::norm(d.tau_plus), 1e-6);
    EXPECT_NEAR(std::norm(d.tau_minus), 1.0, 0.1);
    const double p = transmission_probability(bare_from_dressed(d));
    EXPECT_NEAR(p, 0.5, 0.05);
}

// ---------------------------------------------------------------------------
// Bare basis and observables

TEST(BareFromDressed, SymmetricChannelsNeverFlip) {
    const DressedCoefficients d{{0.3, 0.1}, {0.3, 0.1}, {0.2, -0.9}, {0.2, -0.9}};
    const auto b = bare_from_dressed(d);
    EXPECT_EQ(std::abs(b.r_g), 0.0);
    EXPECT_EQ(std::abs(b.t_g), 0.0);
}

TEST(BareFromDressed, PiPhaseTransfersExcitation) {
    const auto b = bare_from_dressed({0.0, 0.0, 1.0, -1.0});
    EXPECT_EQ(std::abs(b.t_e), 0.0);
    EXPECT_EQ(b.t_g, cplx(1.0));
    EXPECT_EQ(std::abs(b.r_e) + std::abs(b.r_g), 0.0);
}

TEST(BareFromDressed, Identity) {
    const auto b = bare_from_dressed({0.0, 0.0, 1.0, 1.0});
    EXPECT_EQ(b.t_e, cplx(1.0));
    EXPECT_EQ(std::abs(b.t_g) + std::abs(b.r_e) + std::abs(b.r_g), 0.0);
}

TEST(TransmissionProbability, Limits) {
    EXPECT_EQ(transmission_probability(bare_from_dressed({0.0, 0.0, 1.0, 1.0})), 1.0);
    EXPECT_EQ(transmission_probability(bare_from_dressed({1.0, 1.0, 0.0, 0.0})), 0.0);
}

TEST(Entropy, Examples) {
    EXPECT_EQ(entropy({0.0, 0.0, 1.0, 0.0}), 0.0);
    const double h = std::sqrt(0.5);
    EXPECT_NEAR(entropy({0.0, 0.0, h, h}), 1.0, 1e-15);
    EXPECT_NEAR(entropy({0.0, 0.0, std::sqrt(0.9), std::sqrt(0.1)}), 0.4689955935892812, 1e-13);
}

TEST(Entropy, RenormalizesSmallDefectsAndRejectsLargeOnes) {
    const double s = std::sqrt(0.5 * (1.0 + 5e-10));
    EXPECT_NEAR(entropy({0.0, 0.0, s, s}), 1.0, 1e-15);
    const double big = std::sqrt(0.5 * (1.0 + 1e-6));
    EXPECT_THROW(entropy({0.0, 0.0, big, big}), UnitarityError);
}

TEST(ResonanceLengths, Meza) {
    const auto l = meza_resonance_lengths(0, 1.0, 2);
    EXPECT_NEAR(l[0], pi / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(l[0], 2.2214, 1e-4);
    EXPECT_NEAR(l[1], 4.4429, 1e-4);
    EXPECT_NEAR(meza_resonance_lengths(0, 2.0, 1)[0], pi / 2.0, 1e-14);
    EXPECT_THROW(meza_resonance_lengths(0, 0.0, 1), InvalidArgument);
}

TEST(ResonanceLengths, Sech) {
    const auto l = sech_resonance_lengths(0, 1.0, 3);
    EXPECT_NEAR(l[0], 1.0, 1e-14);
    EXPECT_NEAR(l[1], std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(l[2], std::sqrt(6.0), 1e-14);
}

TEST(AnalyticDispatch, NoClosedFormForGaussian) {
    EXPECT_THROW(analytic_bare(GaussianProfile{1.0, 1.0}, 0.5, 0), InvalidArgument);
    EXPECT_NO_THROW(analytic_bare(SechProfile{1.0, 1.0}, 0.5, 0));
}

// ---------------------------------------------------------------------------
// Properties

TEST(AnalyticProperty, PerChannelUnitarityAndBareCompleteness) {
    gen::for_all(2000, 61, [](gen::Source& g, int) {
        const double k = g.uniform(1e-3, 3.0);
        const int n = g.integer(0, 3);
        const double lambda0 = g.uniform(0.0, 3.0);
        const double len = g.log_uniform(0.1, 100.0);
        for (const auto& d : {meza_dressed(k, n, lambda0, len), sech_dressed(k, n, lambda0, len)}) {
            EXPECT_LT(unitarity_defect(d), 1e-10);
            EXPECT_NEAR(bare_from_dressed(d).total(), 1.0, 1e-10);
        }
    });
}

TEST(AnalyticProperty, MaximalEntropyExactlyAtEqualPopulations) {
    gen::for_all(1000, 62, [](gen::Source& g, int) {
        const double p = g.uniform(0.0, 1.0);
        const double s = binary_entropy(p);
        EXPECT_LE(s, 1.0);
        EXPECT_GE(s, 0.0);
        if (std::abs(p - 0.5) > 1e-6) {
            EXPECT_LT(s, 1.0);
        }
        EXPECT_NEAR(s, binary_entropy(1.0 - p), 1e-15);
    });
    EXPECT_EQ(binary_entropy(0.5), 1.0);
}

TEST(AnalyticProperty, MezaAgreesWithTransferMatrix) {
    gen::for_all(300, 63, [](gen::Source& g, int) {
        const double k = g.uniform(0.02, 3.0);
        const int n = g.integer(0, 3);
        const double lambda0 = g.uniform(0.1, 2.0);
        const double l = g.log_uniform(0.2, 60.0);
        const double v = lambda0 * std::sqrt(n + 1.0);
        const auto d = meza_dressed(k, n, lambda0, l);
        // tunnelling amplitudes below threshold are tiny; compare absolutely
        EXPECT_LT(max_diff(d, oracle::square(k, v, l), oracle::square(k, -v, l)), 1e-9);
    });
}

TEST(AnalyticProperty, SechAgreesWithNumericalIntegration) {
    gen::for_all(12, 64, [](gen::Source& g, int) {
        const double k = g.uniform(0.05, 2.0);
        const int n = g.integer(0, 3);
        const double L = g.uniform(0.5, 6.0);
        const double v = std::sqrt(n + 1.0);
        const auto d = sech_dressed(k, n, 1.0, L);
        EXPECT_LT(max_diff(d, oracle::sech_squared(k, v, L), oracle::sech_squared(k, -v, L)), 1e-6);
    });
}
