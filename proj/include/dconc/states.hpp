#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dconc/linalg.hpp"

namespace dconc {

using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a campaign seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Normalized bipartite state vector on C^dA (x) C^dB.
class PureState {
public:
    static constexpr double kNormTolerance = 1e-12;

    /// Validates dimensions and norm; throws DimensionError / DomainError.
    PureState(std::size_t dA, std::size_t dB, ComplexVector amplitudes);

    /// Rescales `amplitudes` to unit norm before validation.
    static PureState normalized(std::size_t dA, std::size_t dB, ComplexVector amplitudes);

    std::size_t dA() const { return dA_; }
    std::size_t dB() const { return dB_; }
    const ComplexVector& amplitudes() const { return amplitudes_; }

    /// The dA x dB coefficient matrix, psi = sum_ik c(i,k) |i>|k>.
    ComplexMatrix coefficients() const;

private:
    std::size_t dA_;
    std::size_t dB_;
    ComplexVector amplitudes_;
};

/// Hermitian, PSD, unit-trace operator on C^dA (x) C^dB.
class DensityMatrix {
public:
    static constexpr double kHermitianTolerance = 1e-10;
    static constexpr double kEigenvalueFloor = -1e-9;
    static constexpr double kTraceTolerance = 1e-10;

    /// Validates all invariants and stores the symmetrized matrix.
    DensityMatrix(std::size_t dA, std::size_t dB, const ComplexMatrix& matrix);

    std::size_t dA() const { return dA_; }
    std::size_t dB() const { return dB_; }
    std::size_t dim() const { return dA_ * dB_; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    std::size_t dA_;
    std::size_t dB_;
    ComplexMatrix matrix_;
};

/// Weighted pure-state ensemble sum_i p_i |psi_i><psi_i|.
struct Decomposition {
    std::vector<double> weights;
    std::vector<PureState> members;

    /// Sum of p_i |psi_i><psi_i|.
    ComplexMatrix reconstruct() const;

    /// Throws DomainError unless weights are a probability vector matching members.
    void validate() const;
};

DensityMatrix density_from_pure(const PureState& psi);
ComplexMatrix reduced_density(const DensityMatrix& rho, Subsystem keep);
ComplexMatrix reduced_density(const PureState& psi, Subsystem keep);

/// Swap operator P = sum_ij |ij><ji| on C^N (x) C^N.
ComplexMatrix swap_operator(std::size_t n);

/// rho_f = [(N - f) I + (N f - 1) P] / (N^3 - N), built literally from I and P.
DensityMatrix werner_state(std::size_t n, double f);

PureState max_entangled(std::size_t d);
PureState bell_state();
PureState product_state(const ComplexVector& a, const ComplexVector& b);

PureState haar_random_pure(std::size_t dA, std::size_t dB, Rng& rng);
DensityMatrix ginibre_random_density(std::size_t dA, std::size_t dB, std::size_t rank, Rng& rng);

/// sum_j p_j rho_j^A (x) rho_j^B. Each factor is rank-1 with probability 1/2,
/// otherwise full-rank Ginibre.
DensityMatrix random_separable(std::size_t dA, std::size_t dB, std::size_t terms, Rng& rng);

/// Haar-random unitary on C^d (QR of a Ginibre matrix with phase fix).
ComplexMatrix haar_random_unitary(std::size_t d, Rng& rng);

/// Local unitary (u (x) v) applied to psi.
PureState apply_local(const PureState& psi, const ComplexMatrix& u, const ComplexMatrix& v);

double purity(const ComplexMatrix& m);

/// Number of eigenvalues above `cutoff`.
std::size_t numerical_rank(const DensityMatrix& rho, double cutoff = 1e-12);

} // namespace dconc
