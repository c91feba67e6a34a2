#include "dconc/states.hpp"

#include <cmath>
#include <string>

namespace dconc {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over a golden-ratio stride
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

void require_bipartite(std::size_t dA, std::size_t dB, const char* what) {
    if (dA < 2 || dB < 2) {
        throw DomainError(std::string(what) + ": subsystem dimensions must be >= 2, got (" + std::to_string(dA) +
                          ", " + std::to_string(dB) + ")");
    }
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

ComplexMatrix ginibre_factor(std::size_t d, std::size_t rank, Rng& rng) {
    const ComplexMatrix g = gaussian_matrix(d, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    return m / m.trace().real();
}

} // namespace

PureState::PureState(std::size_t dA, std::size_t dB, ComplexVector amplitudes)
    : dA_(dA), dB_(dB), amplitudes_(std::move(amplitudes)) {
    require_bipartite(dA, dB, "PureState");
    if (static_cast<std::size_t>(amplitudes_.size()) != dA * dB) {
        throw DimensionError("PureState: expected " + std::to_string(dA * dB) + " amplitudes, got " +
                             std::to_string(amplitudes_.size()));
    }
    if (!all_finite(amplitudes_)) throw DomainError("PureState: non-finite amplitude");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw DomainError("PureState: amplitudes have norm " + std::to_string(norm));
    }
}

PureState PureState::normalized(std::size_t dA, std::size_t dB, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("PureState: cannot normalize a zero vector");
    amplitudes /= norm;
    return PureState(dA, dB, std::move(amplitudes));
}

ComplexMatrix PureState::coefficients() const {
    ComplexMatrix c(static_cast<Eigen::Index>(dA_), static_cast<Eigen::Index>(dB_));
    for (std::size_t i = 0; i < dA_; ++i)
        for (std::size_t k = 0; k < dB_; ++k)
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                amplitudes_(static_cast<Eigen::Index>(i * dB_ + k));
    return c;
}

DensityMatrix::DensityMatrix(std::size_t dA, std::size_t dB, const ComplexMatrix& matrix) : dA_(dA), dB_(dB) {
    require_bipartite(dA, dB, "DensityMatrix");
    const auto n = static_cast<Eigen::Index>(dA * dB);
    if (matrix.rows() != n || matrix.cols() != n) {
        throw DimensionError("DensityMatrix: expected " + std::to_string(n) + "x" + std::to_string(n) +
                             " matrix, got " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()));
    }
    if (!all_finite(matrix)) throw DomainError("DensityMatrix: non-finite entry");
    const double defect = hermiticity_defect(matrix);
    if (defect > kHermitianTolerance) {
        throw DomainError("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
    }
    matrix_ = (matrix + matrix.adjoint()) * 0.5;
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw DomainError("DensityMatrix: trace is " + std::to_string(tr) + ", expected 1");
    }
    const RealVector spectrum = hermitian_eigenvalues(matrix_);
    if (spectrum.front() < kEigenvalueFloor) {
        throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(spectrum.front()));
    }
}

ComplexMatrix Decomposition::reconstruct() const {
    if (members.empty()) throw DomainError("Decomposition: no members");
    const auto n = members.front().amplitudes().size();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < members.size(); ++i) {
        const ComplexVector& v = members[i].amplitudes();
        out.noalias() += weights[i] * (v * v.adjoint());
    }
    return out;
}

void Decomposition::validate() const {
    if (weights.size() != members.size() || members.empty()) {
        throw DomainError("Decomposition: weights and members must be non-empty and of equal length");
    }
    double total = 0.0;
    for (double p : weights) {
        if (!(p >= 0.0)) throw DomainError("Decomposition: negative weight");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw DomainError("Decomposition: weights sum to " + std::to_string(total));
    }
}

DensityMatrix density_from_pure(const PureState& psi) {
    const ComplexVector& v = psi.amplitudes();
    return DensityMatrix(psi.dA(), psi.dB(), v * v.adjoint());
}

ComplexMatrix reduced_density(const DensityMatrix& rho, Subsystem keep) {
    return partial_trace(rho.matrix(), rho.dA(), rho.dB(), keep);
}

ComplexMatrix reduced_density(const PureState& psi, Subsystem keep) {
    const ComplexMatrix c = psi.coefficients();
    if (keep == Subsystem::A) return c * c.adjoint();
    return (c.adjoint() * c).transpose();
}

ComplexMatrix swap_operator(std::size_t n) {
    const auto d = static_cast<Eigen::Index>(n);
    ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            p(i * d + j, j * d + i) = 1.0;
    return p;
}

DensityMatrix werner_state(std::size_t n, double f) {
    if (n < 2) throw DomainError("werner_state: N must be >= 2, got " + std::to_string(n));
    if (!(f >= -1.0 && f <= 1.0)) throw DomainError("werner_state: f must lie in [-1, 1], got " + std::to_string(f));
    const double nd = static_cast<double>(n);
    const ComplexMatrix rho =
        ((nd - f) * identity(n * n) + (nd * f - 1.0) * swap_operator(n)) / (nd * nd * nd - nd);
    return DensityMatrix(n, n, rho);
}

PureState max_entangled(std::size_t d) {
    if (d < 2) throw DomainError("max_entangled: d must be >= 2");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = amp;
    return PureState::normalized(d, d, std::move(v));
}

PureState bell_state() { return max_entangled(2); }

PureState product_state(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector v(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index k = 0; k < b.size(); ++k) v(i * b.size() + k) = a(i) * b(k);
    return PureState::normalized(static_cast<std::size_t>(a.size()), static_cast<std::size_t>(b.size()), std::move(v));
}

PureState haar_random_pure(std::size_t dA, std::size_t dB, Rng& rng) {
    require_bipartite(dA, dB, "haar_random_pure");
    ComplexMatrix g = gaussian_matrix(dA * dB, 1, rng);
    return PureState::normalized(dA, dB, g.col(0));
}

DensityMatrix ginibre_random_density(std::size_t dA, std::size_t dB, std::size_t rank, Rng& rng) {
    require_bipartite(dA, dB, "ginibre_random_density");
    if (rank < 1 || rank > dA * dB) {
        throw DomainError("ginibre_random_density: rank must lie in [1, " + std::to_string(dA * dB) + "], got " +
                          std::to_string(rank));
    }
    return DensityMatrix(dA, dB, ginibre_factor(dA * dB, rank, rng));
}

DensityMatrix random_separable(std::size_t dA, std::size_t dB, std::size_t terms, Rng& rng) {
    require_bipartite(dA, dB, "random_separable");
    if (terms < 1) throw DomainError("random_separable: terms must be >= 1");
    std::bernoulli_distribution pure_factor(0.5);
    std::exponential_distribution<double> expo(1.0);

    std::vector<double> weights(terms);
    double total = 0.0;
    for (double& w : weights) total += (w = expo(rng));

    const auto n = static_cast<Eigen::Index>(dA * dB);
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < terms; ++j) {
        const ComplexMatrix a = ginibre_factor(dA, pure_factor(rng) ? 1 : dA, rng);
        const ComplexMatrix b = ginibre_factor(dB, pure_factor(rng) ? 1 : dB, rng);
        rho += (weights[j] / total) * tensor_product(a, b);
    }
    return DensityMatrix(dA, dB, rho);
}

ComplexMatrix haar_random_unitary(std::size_t d, Rng& rng) {
    const ComplexMatrix g = gaussian_matrix(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(j) *= diag / mag;
    }
    return q;
}

PureState apply_local(const PureState& psi, const ComplexMatrix& u, const ComplexMatrix& v) {
    const ComplexMatrix c = u * psi.coefficients() * v.transpose();
    ComplexVector out(c.size());
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index k = 0; k < c.cols(); ++k) out(i * c.cols() + k) = c(i, k);
    return PureState::normalized(psi.dA(), psi.dB(), std::move(out));
}

double purity(const ComplexMatrix& m) {
    // Tr(m^2) for Hermitian m is the squared Frobenius norm
    return m.squaredNorm();
}

std::size_t numerical_rank(const DensityMatrix& rho, double cutoff) {
    std::size_t rank = 0;
    for (double v : hermitian_eigenvalues(rho.matrix()))
        if (v > cutoff) ++rank;
    return rank;
}

} // namespace dconc
