#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dconc {

using Complex = std::complex<double>;

/// Dense complex matrix in row-major logical order. Composite bipartite
/// indices follow (i * dB + k) everywhere in the library.
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = std::vector<double>;

/// Shapes that do not fit together.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Inputs outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A quantity that should be nonnegative came out negative beyond noise.
class NumericalDomainError : public DomainError {
public:
    explicit NumericalDomainError(const std::string& what) : DomainError(what) {}
};

enum class Subsystem { A, B };

struct EigenSystem {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // orthonormal columns
};

// Max-entry Hermiticity slack tolerated before an input is rejected.
inline constexpr double kHermitianTolerance = 1e-8;

ComplexMatrix identity(std::size_t n);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out one side of a (dA*dB)-square operator, returning the marginal
/// of the kept subsystem.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dA, std::size_t dB, Subsystem keep);

/// Full spectrum of a Hermitian matrix. Inputs within kHermitianTolerance of
/// Hermitian are symmetrized as (m + m^dagger)/2 first.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Product of the eigenvalues of the symmetrized input. No regularization.
double det_hermitian(const ComplexMatrix& m);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& m, Complex factor);
Complex trace(const ComplexMatrix& m);

/// Trace of a matrix that should be Hermitian; throws DomainError when the
/// imaginary part exceeds the Hermiticity tolerance.
double trace_real(const ComplexMatrix& m);

/// Largest |m - m^dagger| entry.
double hermiticity_defect(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Matrix function of a PSD Hermitian matrix: V * diag(sqrt(max(l, 0))) * V^dagger.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Throws DimensionError unless m is square.
void require_square(const ComplexMatrix& m, const char* what);

} // namespace dconc
