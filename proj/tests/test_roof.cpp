#include <gtest/gtest.h>
#include <iomanip>

#include "dconc/bounds.hpp"
#include "dconc/roof.hpp"
#include "test_support.hpp"

using namespace dconc;
using dconc::testing::basis;
using dconc::testing::max_abs_diff;

namespace {

RoofConfig quick_config(std::uint64_t seed, std::size_t restarts = 4) {
    RoofConfig cfg;
    cfg.rng_seed = seed;
    cfg.restarts = restarts;
    return cfg;
}

// Four Bell states with equal weights: the maximally mixed two-qubit state.
Decomposition bell_mixture() {
    const double s = 1.0 / std::sqrt(2.0);
    const auto bell = [&](int a, int b, double sign) {
        ComplexVector v = ComplexVector::Zero(4);
        v(a) = s;
        v(b) = sign * s;
        return PureState::normalized(2, 2, v);
    };
    Decomposition dec;
    dec.weights = {0.25, 0.25, 0.25, 0.25};
    dec.members = {bell(0, 3, 1), bell(0, 3, -1), bell(1, 2, 1), bell(1, 2, -1)};
    return dec;
}

} // namespace

TEST(DecompositionFromIsometry, IdentityGivesEigenEnsemble) {
    Rng rng(3);
    const DensityMatrix rho = ginibre_random_density(2, 3, 4, rng);
    const Decomposition dec = decomposition_from_isometry(rho, identity(4));
    RealVector spectrum = hermitian_eigenvalues(rho.matrix());
    std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
    ASSERT_EQ(dec.members.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(dec.weights[i], spectrum[i], 1e-14);
        const ComplexVector& v = dec.members[i].amplitudes();
        EXPECT_LE((rho.matrix() * v - spectrum[i] * v).norm(), 1e-12);
    }
    EXPECT_LE(max_abs_diff(dec.reconstruct(), rho.matrix()), 1e-12);
}

TEST(DecompositionFromIsometry, RankOneMembersAreThePureState) {
    Rng rng(5);
    const PureState psi = haar_random_pure(2, 2, rng);
    const DensityMatrix rho = density_from_pure(psi);
    const ComplexMatrix u = random_isometry(3, 1, rng);
    const Decomposition dec = decomposition_from_isometry(rho, u);
    ASSERT_EQ(dec.members.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(dec.weights[i], std::norm(u(static_cast<Eigen::Index>(i), 0)), 1e-12);
        EXPECT_NEAR(std::abs(dec.members[i].amplitudes().dot(psi.amplitudes())), 1.0, 1e-12);
    }
}

TEST(DecompositionFromIsometry, RandomIsometryReconstructsWerner) {
    Rng rng(7);
    const DensityMatrix rho = werner_state(2, -0.5);
    for (std::size_t m : {4u, 9u, 16u}) {
        const Decomposition dec = decomposition_from_isometry(rho, random_isometry(m, 4, rng));
        EXPECT_NO_THROW(dec.validate());
        EXPECT_LE(max_abs_diff(dec.reconstruct(), rho.matrix()), 1e-8);
    }
}

TEST(DecompositionFromIsometry, PrunesZeroRows) {
    const DensityMatrix rho = werner_state(2, -0.5);
    ComplexMatrix u = ComplexMatrix::Zero(6, 4);
    u.topRows(4) = identity(4);
    EXPECT_EQ(decomposition_from_isometry(rho, u).members.size(), 4u);
}

TEST(DecompositionFromIsometry, RejectsNonIsometry) {
    const DensityMatrix rho = werner_state(2, -0.5);
    EXPECT_THROW(decomposition_from_isometry(rho, identity(4) * 1.1), DomainError);
    EXPECT_THROW(decomposition_from_isometry(rho, identity(3)), DomainError);
}

TEST(AverageMeasure, SingleMember) {
    Decomposition dec;
    dec.weights = {1.0};
    dec.members = {bell_state()};
    EXPECT_NEAR(average_measure(dec, MeasureKind::DConcurrence), 0.5, 1e-14);
    EXPECT_NEAR(average_measure(dec, MeasureKind::Concurrence), 1.0, 1e-14);
}

TEST(AverageMeasure, BellMixture) {
    const Decomposition dec = bell_mixture();
    EXPECT_LE(max_abs_diff(dec.reconstruct(), identity(4) * 0.25), 1e-15);
    EXPECT_NEAR(average_measure(dec, MeasureKind::DConcurrence), 0.5, 1e-14);
}

TEST(AverageMeasure, MatchesSummationLoop) {
    Rng rng(11);
    const DensityMatrix rho = ginibre_random_density(3, 2, 6, rng);
    const Decomposition dec = decomposition_from_isometry(rho, identity(6));
    double total = 0.0;
    for (std::size_t i = 0; i < dec.members.size(); ++i) {
        const ComplexMatrix ra = reduced_density(dec.members[i], Subsystem::A);
        total += dec.weights[i] * std::sqrt(std::max(0.0, det_hermitian(identity(3) - ra)));
    }
    EXPECT_NEAR(average_measure(dec, MeasureKind::DConcurrence), total, 1e-14);
}

TEST(WeightedMemberValue, ScalesWithWeight) {
    Rng rng(13);
    for (std::size_t dA : {2u, 3u}) {
        const PureState psi = haar_random_pure(dA, 3, rng);
        ComplexVector w = psi.amplitudes() * std::sqrt(0.37);
        for (MeasureKind kind : {MeasureKind::Concurrence, MeasureKind::DConcurrence}) {
            const double got = detail::weighted_member_value({w.data(), static_cast<std::size_t>(w.size())}, dA, 3, kind);
            EXPECT_NEAR(got, 0.37 * pure_measure(psi, kind).value, 1e-13);
        }
    }
}

TEST(WeightedMemberValue, GradientMatchesFiniteDifferences) {
    Rng rng(17);
    for (std::size_t dA : {2u, 3u, 4u}) {
        for (MeasureKind kind : {MeasureKind::Concurrence, MeasureKind::DConcurrence}) {
            const std::size_t dB = 3;
            ComplexVector w = dconc::testing::random_matrix(dA * dB, 1, rng).col(0) * 0.4;
            std::vector<Complex> grad(dA * dB);
            const std::span<const Complex> view(w.data(), dA * dB);
            detail::weighted_member_value(view, dA, dB, kind, grad);
            const double h = 1e-6;
            for (std::size_t x = 0; x < dA * dB; ++x) {
                for (const Complex step : {Complex(h, 0), Complex(0, h)}) {
                    ComplexVector plus = w;
                    ComplexVector minus = w;
                    plus(static_cast<Eigen::Index>(x)) += step;
                    minus(static_cast<Eigen::Index>(x)) -= step;
                    const double fd = (detail::weighted_member_value({plus.data(), dA * dB}, dA, dB, kind) -
                                       detail::weighted_member_value({minus.data(), dA * dB}, dA, dB, kind)) /
                                      (2.0 * h);
                    // d f = Re(conj(G) dw)
                    const double analytic = (std::conj(grad[x]) * step).real() / h;
                    EXPECT_NEAR(fd, analytic, 1e-6 * std::max(1.0, std::abs(fd)))
                        << "dA=" << dA << " kind=" << to_string(kind) << " x=" << x;
                }
            }
        }
    }
}

TEST(MinimizeRoof, PureStateIsExact) {
    Rng rng(19);
    const PureState psi = haar_random_pure(2, 3, rng);
    const RoofEstimate est = minimize_roof(density_from_pure(psi), MeasureKind::DConcurrence, quick_config(1));
    EXPECT_NEAR(est.value, d_concurrence_pure(psi).value, 1e-12);
    EXPECT_EQ(est.iterations, 0u);
    EXPECT_EQ(est.rank, 1u);
    EXPECT_TRUE(est.converged);
}

TEST(MinimizeRoof, WernerMatchesHalfWootters) {
    const DensityMatrix rho = werner_state(2, -0.5);
    const RoofEstimate est = minimize_roof(rho, MeasureKind::DConcurrence);
    EXPECT_NEAR(est.value, 0.25, 2e-3);
    EXPECT_GE(est.value, 0.25 - 1e-9);
    EXPECT_LE(max_abs_diff(est.decomposition.reconstruct(), rho.matrix()), 1e-8);
    EXPECT_NO_THROW(est.decomposition.validate());
    EXPECT_NEAR(est.lower_bracket, 0.25, 1e-9);
}

TEST(MinimizeRoof, SeparableTwoQubitMatchesWootters) {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_separable(2, 2, 1 + trial % 4, rng);
        const RoofEstimate est = minimize_roof(rho, MeasureKind::Concurrence, quick_config(trial, 8));
        EXPECT_NEAR(est.value, wootters_concurrence(rho).value, 2e-3);
    }
}

TEST(MinimizeRoof, NeverUndercutsWootters) {
    Rng rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = ginibre_random_density(2, 2, 1 + trial % 4, rng);
        const RoofEstimate est = minimize_roof(rho, MeasureKind::Concurrence, quick_config(trial, 1));
        EXPECT_GE(est.value, wootters_concurrence(rho).value - 1e-9);
    }
}

TEST(MinimizeRoof, ConvergesToWoottersWithEightMembers) {
    Rng rng(31);
    int hits = 0;
    const int states = 100;
    for (int trial = 0; trial < states; ++trial) {
        const std::size_t rank = 1 + static_cast<std::size_t>(trial % 4);
        const DensityMatrix rho = ginibre_random_density(2, 2, rank, rng);
        RoofConfig cfg = quick_config(trial, 20);
        cfg.ensemble_size = std::clamp<std::size_t>(8, rank, rank * rank);
        const double c = minimize_roof(rho, MeasureKind::Concurrence, cfg).value;
        const double d = minimize_roof(rho, MeasureKind::DConcurrence, cfg).value;
        const double exact = wootters_concurrence(rho).value;
        if (std::abs(c - exact) <= 2e-3 && std::abs(d - exact / 2) <= 2e-3) ++hits;
    }
    EXPECT_GE(hits, 99);
}

TEST(MinimizeRoof, LargerEnsembleNeverHurts) {
    Rng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = ginibre_random_density(2, 3, 3, rng);
        RoofConfig small = quick_config(trial, 3);
        small.ensemble_size = 3;
        const RoofEstimate base = minimize_roof(rho, MeasureKind::DConcurrence, small);
        RoofConfig large = quick_config(trial, 3);
        large.ensemble_size = 9;
        large.warm_starts = {base.isometry};
        const RoofEstimate grown = minimize_roof(rho, MeasureKind::DConcurrence, large);
        EXPECT_LE(grown.value, base.value + 1e-9) << std::setprecision(17) << grown.value - base.value;
    }
}

TEST(MinimizeRoof, RespectsClosedFormBounds) {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const DensityMatrix rho = ginibre_random_density(2, 2 + trial % 2, 1 + trial % 4, rng);
        const double d = minimize_roof(rho, MeasureKind::DConcurrence, quick_config(trial)).value;
        const double c = minimize_roof(rho, MeasureKind::Concurrence, quick_config(trial)).value;
        EXPECT_LE(d * d, d_upper_bound(rho) + 1e-9);
        EXPECT_GE(c * c, mb_lower_bound_c2(rho) - 1e-6);
    }
}

TEST(MinimizeRoof, DeterministicForFixedSeed) {
    Rng rng(43);
    const DensityMatrix rho = ginibre_random_density(2, 3, 4, rng);
    const RoofEstimate a = minimize_roof(rho, MeasureKind::DConcurrence, quick_config(99));
    const RoofEstimate b = minimize_roof(rho, MeasureKind::DConcurrence, quick_config(99));
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.restart_values, b.restart_values);
    EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(MinimizeRoof, HigherLocalDimension) {
    // 3x3 Werner states have maximally mixed marginals: D <= sqrt(det(I - I/3))
    const DensityMatrix rho = werner_state(3, -1.0);
    const RoofEstimate est = minimize_roof(rho, MeasureKind::DConcurrence, quick_config(5, 3));
    EXPECT_GE(est.value, 0.0);
    EXPECT_LE(est.value, std::sqrt(8.0 / 27.0) + 1e-9);
    EXPECT_LE(max_abs_diff(est.decomposition.reconstruct(), rho.matrix()), 1e-8);
}

TEST(MinimizeRoof, ConfigValidation) {
    Rng rng(47);
    const DensityMatrix rho = ginibre_random_density(2, 2, 2, rng);
    RoofConfig cfg;
    cfg.ensemble_size = 1;
    EXPECT_THROW(minimize_roof(rho, MeasureKind::Concurrence, cfg), ConfigError);
    cfg.ensemble_size = 5;
    EXPECT_THROW(minimize_roof(rho, MeasureKind::Concurrence, cfg), ConfigError);
    cfg = RoofConfig{};
    cfg.restarts = 0;
    EXPECT_THROW(minimize_roof(rho, MeasureKind::Concurrence, cfg), ConfigError);
    cfg = RoofConfig{};
    cfg.step_tolerance = 0.0;
    EXPECT_THROW(minimize_roof(rho, MeasureKind::Concurrence, cfg), ConfigError);
    EXPECT_EQ(default_ensemble_size(1), 1u);
    EXPECT_EQ(default_ensemble_size(3), 9u);
    EXPECT_EQ(default_ensemble_size(6), 16u);
    EXPECT_EQ(default_ensemble_size(20), 20u);
}
