#include "dconc/linalg.hpp"

#include <cmath>
#include <numeric>

namespace dconc {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

ComplexMatrix identity(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index rb = b.rows();
    const Eigen::Index cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dA, std::size_t dB, Subsystem keep) {
    const auto a = static_cast<Eigen::Index>(dA);
    const auto b = static_cast<Eigen::Index>(dB);
    if (dA == 0 || dB == 0 || m.rows() != a * b || m.cols() != a * b) {
        throw DimensionError("partial_trace: operator is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(dA * dB) +
                             " square for dims (" + std::to_string(dA) + ", " + std::to_string(dB) + ")");
    }
    if (keep == Subsystem::A) {
        ComplexMatrix out = ComplexMatrix::Zero(a, a);
        for (Eigen::Index i = 0; i < a; ++i)
            for (Eigen::Index j = 0; j < a; ++j)
                for (Eigen::Index k = 0; k < b; ++k)
                    out(i, j) += m(i * b + k, j * b + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(b, b);
    for (Eigen::Index k = 0; k < b; ++k)
        for (Eigen::Index l = 0; l < b; ++l)
            for (Eigen::Index i = 0; i < a; ++i)
                out(k, l) += m(i * b + k, i * b + l);
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

namespace {

ComplexMatrix symmetrized(const ComplexMatrix& m, const char* what) {
    require_square(m, what);
    const double defect = hermiticity_defect(m);
    if (!(defect <= kHermitianTolerance)) {
        throw DomainError(std::string(what) + ": matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    return (m + m.adjoint()) * 0.5;
}

} // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    const ComplexMatrix h = symmetrized(m, "hermitian_eigensystem");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw DomainError("hermitian_eigensystem: no convergence");
    const auto& values = solver.eigenvalues();
    return {RealVector(values.data(), values.data() + values.size()), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    const ComplexMatrix h = symmetrized(m, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DomainError("hermitian_eigenvalues: no convergence");
    const auto& values = solver.eigenvalues();
    return RealVector(values.data(), values.data() + values.size());
}

double det_hermitian(const ComplexMatrix& m) {
    const RealVector values = hermitian_eigenvalues(m);
    return std::accumulate(values.begin(), values.end(), 1.0, std::multiplies<>());
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()) + " differ");
    }
    return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shapes differ");
    return a + b;
}

ComplexMatrix scale(const ComplexMatrix& m, Complex factor) { return m * factor; }

Complex trace(const ComplexMatrix& m) {
    require_square(m, "trace");
    return m.trace();
}

double trace_real(const ComplexMatrix& m) {
    const Complex t = trace(m);
    if (std::abs(t.imag()) > kHermitianTolerance) {
        throw DomainError("trace_real: trace has imaginary part " + std::to_string(t.imag()));
    }
    return t.real();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    const EigenSystem es = hermitian_eigensystem(m);
    Eigen::VectorXd roots(static_cast<Eigen::Index>(es.eigenvalues.size()));
    for (std::size_t i = 0; i < es.eigenvalues.size(); ++i) roots(static_cast<Eigen::Index>(i)) = std::sqrt(std::max(es.eigenvalues[i], 0.0));
    return es.eigenvectors * roots.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
}

} // namespace dconc
