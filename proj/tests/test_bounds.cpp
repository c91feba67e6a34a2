#include <gtest/gtest.h>

#include "dconc/bounds.hpp"
#include "dconc/measures.hpp"
#include "test_support.hpp"

using namespace dconc;
using dconc::testing::basis;
using dconc::testing::random_psd;

namespace {

DensityMatrix bell_projector() { return density_from_pure(bell_state()); }
DensityMatrix maximally_mixed() { return DensityMatrix(2, 2, identity(4) * 0.25); }
DensityMatrix product_projector() { return density_from_pure(product_state(basis(2, 0), basis(2, 1))); }

} // namespace

TEST(MbLowerBound, ReferenceValues) {
    EXPECT_NEAR(mb_lower_bound_c2(werner_state(2, -0.5)), 1.0 / 6.0, 1e-14);
    EXPECT_NEAR(mb_lower_bound_c2(maximally_mixed()), -0.5, 1e-14);
}

TEST(PurityUpperBound, ReferenceValues) {
    EXPECT_NEAR(purity_upper_bound_c2(bell_projector()), 1.0, 1e-14);
    EXPECT_NEAR(purity_upper_bound_c2(product_projector()), 0.0, 1e-14);
    EXPECT_NEAR(purity_upper_bound_c2(werner_state(2, -0.5)), 1.0, 1e-14);
}

TEST(PureStateSaturation, BothConcurrenceBoundsEqualCSquared) {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const PureState psi = haar_random_pure(2 + trial % 3, 2 + (trial / 3) % 2, rng);
        const DensityMatrix rho = density_from_pure(psi);
        const double c = concurrence_pure(psi).value;
        EXPECT_NEAR(mb_lower_bound_c2(rho), c * c, 1e-10);
        EXPECT_NEAR(purity_upper_bound_c2(rho), c * c, 1e-10);
    }
}

TEST(DUpperBound, ReferenceValues) {
    EXPECT_NEAR(d_upper_bound(product_projector()), 0.0, 1e-14);
    EXPECT_NEAR(d_upper_bound(bell_projector()), 0.25, 1e-14);
    EXPECT_NEAR(d_upper_bound(werner_state(2, -0.5)), 0.25, 1e-14);
}

TEST(DLowerBound, ReferenceValues) {
    // 1/4 - (11/12)^3 (1/4)
    EXPECT_NEAR(d_lower_bound(werner_state(2, -0.5)), 0.25 - 1331.0 / 6912.0, 1e-14);
    EXPECT_NEAR(4.0 * d_lower_bound(werner_state(2, -0.5)), 0.2297, 5e-4);
    EXPECT_NEAR(d_lower_bound(maximally_mixed()), 0.25 - std::pow(0.75, 4), 1e-14);
    EXPECT_NEAR(d_lower_bound(product_projector()), 0.0, 1e-14);
}

TEST(BoundReport, OrderingOnRandomStates) {
    Rng rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t dA = 2 + trial % 2;
        const std::size_t dB = 2 + (trial / 2) % 2;
        const DensityMatrix rho = ginibre_random_density(dA, dB, 1 + trial % (dA * dB), rng);
        const BoundReport r = bound_report(rho);
        EXPECT_LE(r.d_lower, r.d_upper + 1e-15);
        EXPECT_GE(r.purity_upper_c2, -1e-15);
        EXPECT_LE(r.purity_upper_c2, 2.0);
        EXPECT_EQ(r.witness_entangled, r.d_lower > kWitnessTolerance);
    }
}

TEST(SeparabilityWitness, Certifications) {
    EXPECT_EQ(separability_witness(werner_state(2, -0.5)), WitnessResult::EntangledCertified);
    EXPECT_EQ(separability_witness(maximally_mixed()), WitnessResult::Inconclusive);
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        EXPECT_EQ(separability_witness(random_separable(2, 3, 1 + trial % 6, rng)), WitnessResult::Inconclusive);
    }
}

TEST(SeparabilityWitness, CertifiedImpliesMajorizationFailure) {
    Rng rng(11);
    int certified = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t dA = 2 + trial % 2;
        const std::size_t dB = 2 + (trial / 2) % 2;
        const DensityMatrix rho = ginibre_random_density(dA, dB, 1 + trial % (dA * dB), rng);
        if (separability_witness(rho) == WitnessResult::EntangledCertified) {
            ++certified;
            EXPECT_FALSE(nielsen_kempe_check(rho).pass_A);
        }
    }
    EXPECT_GT(certified, 100);
}

TEST(Majorization, HandExamples) {
    EXPECT_TRUE(majorizes({0.5, 0.5}, {1.0, 0.0}));
    EXPECT_FALSE(majorizes({1.0, 0.0}, {0.6, 0.4}));
    EXPECT_TRUE(majorizes({0.7, 0.2, 0.1}, {0.7, 0.3}));
    EXPECT_TRUE(majorizes({0.1, 0.2, 0.7}, {0.3, 0.7}));
    EXPECT_TRUE(majorizes({0.25, 0.25, 0.25, 0.25}, {0.5, 0.5}));
}

TEST(Majorization, TotalMismatchIsFlagged) {
    const MajorizationResult r = majorization({0.5, 0.4}, {1.0, 0.0});
    EXPECT_FALSE(r.majorized);
    EXPECT_TRUE(r.total_mismatch);
    EXPECT_FALSE(majorization({0.5, 0.5}, {1.0, 0.0}).total_mismatch);
}

TEST(Majorization, UniformIsMajorizedByEverything) {
    Rng rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        RealVector y(5);
        double total = 0.0;
        for (double& v : y) total += (v = u(rng));
        for (double& v : y) v /= total;
        EXPECT_TRUE(majorizes(RealVector(5, 0.2), y));
        EXPECT_TRUE(majorizes(y, {1.0}));
    }
}

TEST(NielsenKempe, EntangledReferenceStatesFail) {
    const NielsenKempeResult bell = nielsen_kempe_check(bell_projector());
    EXPECT_FALSE(bell.pass_A);
    EXPECT_FALSE(bell.pass_B);
    const NielsenKempeResult werner = nielsen_kempe_check(werner_state(2, -0.5));
    EXPECT_FALSE(werner.pass_A);
    EXPECT_FALSE(werner.pass_B);
}

TEST(NielsenKempe, SeparableStatesPass) {
    Rng rng(17);
    for (int trial = 0; trial < 2000; ++trial) {
        const NielsenKempeResult r = nielsen_kempe_check(random_separable(2 + trial % 2, 3, 1 + trial % 4, rng));
        EXPECT_TRUE(r.pass_A);
        EXPECT_TRUE(r.pass_B);
    }
}

TEST(DetSuperadditivity, Examples) {
    EXPECT_TRUE(det_superadditivity_check(identity(2), identity(2)));
    Rng rng(19);
    const ComplexMatrix b = random_psd(3, 3, rng);
    EXPECT_TRUE(det_superadditivity_check(ComplexMatrix::Zero(3, 3), b));
    EXPECT_NEAR(det_hermitian(ComplexMatrix::Zero(3, 3) + b), det_hermitian(b), 1e-15);
}

TEST(DetSuperadditivity, RandomPairs) {
    Rng rng(23);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        const ComplexMatrix a = random_psd(n, 1 + trial % n, rng);
        const ComplexMatrix b = random_psd(n, n, rng);
        EXPECT_TRUE(det_superadditivity_check(a, b));
    }
}

TEST(DetSuperadditivity, Errors) {
    EXPECT_THROW(det_superadditivity_check(dconc::testing::diag({1, -1}), identity(2)), DomainError);
    EXPECT_THROW(det_superadditivity_check(identity(2), identity(3)), DimensionError);
}
