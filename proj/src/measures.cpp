#include "dconc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/SVD>

namespace dconc {

const char* to_string(MeasureKind kind) {
    return kind == MeasureKind::Concurrence ? "concurrence" : "d_concurrence";
}

double clamped_sqrt(double radicand, const char* what) {
    if (radicand < -kRadicandNoise || !std::isfinite(radicand)) {
        throw NumericalDomainError(std::string(what) + ": negative radicand " + std::to_string(radicand));
    }
    return std::sqrt(std::max(radicand, 0.0));
}

namespace {

// Eigenvalues of rho at or below this are dropped from its support.
constexpr double kSupportCutoff = 1e-15;

ComplexMatrix sigma_y_sigma_y() {
    ComplexMatrix sy(2, 2);
    sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return tensor_product(sy, sy);
}

// (I - SWAP)/2 on C^d (x) C^d
ComplexMatrix antisymmetric_projector(std::size_t d) {
    return (identity(d * d) - swap_operator(d)) * 0.5;
}

void require_two_qubit(std::size_t dA, std::size_t dB, const char* what) {
    if (dA != 2 || dB != 2) {
        throw DimensionError(std::string(what) + ": requires a two-qubit state, got (" + std::to_string(dA) + ", " +
                             std::to_string(dB) + ")");
    }
}

// Squared Schmidt coefficients, descending, padded with zeros to length `pad`.
RealVector schmidt_weights(const PureState& psi, std::size_t pad) {
    Eigen::JacobiSVD<ComplexMatrix> svd(psi.coefficients());
    RealVector lambda(std::max<std::size_t>(pad, static_cast<std::size_t>(svd.singularValues().size())), 0.0);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        lambda[static_cast<std::size_t>(i)] = svd.singularValues()(i) * svd.singularValues()(i);
    }
    return lambda;
}

// 1 - Tr rho_A^2 as 2 sum_{i<j} l_i l_j, accurate near product states
double linear_entropy(const RealVector& lambda) {
    double total = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t j = i + 1; j < lambda.size(); ++j) total += lambda[i] * lambda[j];
    return 2.0 * total;
}

// det(I - rho_X) on a marginal of dimension d, with 1 - l_k as sum_{i != k} l_i
double complement_det(const RealVector& lambda, std::size_t d) {
    double det = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        double rest = 0.0;
        for (std::size_t i = 0; i < lambda.size(); ++i)
            if (i != k) rest += lambda[i];
        det *= rest;
    }
    return det;
}

} // namespace

MeasureValue concurrence_pure(const PureState& psi) {
    const double e = linear_entropy(schmidt_weights(psi, 0));
    return {clamped_sqrt(2.0 * e, "concurrence_pure"), MeasureKind::Concurrence};
}

MeasureValue concurrence_pure_b(const PureState& psi) {
    const double p = purity(reduced_density(psi, Subsystem::B));
    return {clamped_sqrt(2.0 * (1.0 - p), "concurrence_pure_b"), MeasureKind::Concurrence};
}

MeasureValue concurrence_pure_twofold(const PureState& psi) {
    const std::size_t dA = psi.dA();
    const std::size_t dB = psi.dB();
    const ComplexMatrix observable = 4.0 * tensor_product(antisymmetric_projector(dA), antisymmetric_projector(dB));

    // |psi>|psi> reordered from (A, B, A', B') to (A, A', B, B')
    const ComplexVector& v = psi.amplitudes();
    ComplexVector doubled(static_cast<Eigen::Index>(dA * dA * dB * dB));
    for (std::size_t a = 0; a < dA; ++a)
        for (std::size_t a2 = 0; a2 < dA; ++a2)
            for (std::size_t b = 0; b < dB; ++b)
                for (std::size_t b2 = 0; b2 < dB; ++b2) {
                    const std::size_t row = ((a * dA + a2) * dB + b) * dB + b2;
                    doubled(static_cast<Eigen::Index>(row)) =
                        v(static_cast<Eigen::Index>(a * dB + b)) * v(static_cast<Eigen::Index>(a2 * dB + b2));
                }
    const Complex expectation = doubled.dot(observable * doubled);
    return {clamped_sqrt(expectation.real(), "concurrence_pure_twofold"), MeasureKind::Concurrence};
}

MeasureValue wootters_concurrence(const DensityMatrix& rho) {
    require_two_qubit(rho.dA(), rho.dB(), "wootters_concurrence");
    // rho = X X^dagger over its support; the lambdas are the singular values of
    // X^T (sy x sy) X, which avoids square roots of roundoff-level eigenvalues
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    std::vector<Eigen::Index> support;
    for (std::size_t i = 0; i < es.eigenvalues.size(); ++i) {
        if (es.eigenvalues[i] < -kRadicandNoise) {
            throw NumericalDomainError("wootters_concurrence: negative eigenvalue " + std::to_string(es.eigenvalues[i]));
        }
        if (es.eigenvalues[i] > kSupportCutoff) support.push_back(static_cast<Eigen::Index>(i));
    }
    ComplexMatrix x(4, static_cast<Eigen::Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j) {
        x.col(static_cast<Eigen::Index>(j)) =
            es.eigenvectors.col(support[j]) * std::sqrt(es.eigenvalues[static_cast<std::size_t>(support[j])]);
    }
    const ComplexMatrix tau = x.transpose() * sigma_y_sigma_y() * x;
    std::vector<double> lambdas(4, 0.0);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(tau).singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) lambdas[static_cast<std::size_t>(i)] = sv(i);
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    const double c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    return {std::max(c, 0.0), MeasureKind::Concurrence};
}

MeasureValue concurrence_two_qubit_pure(const PureState& psi) {
    require_two_qubit(psi.dA(), psi.dB(), "concurrence_two_qubit_pure");
    const double det = det_hermitian(reduced_density(psi, Subsystem::A));
    return {2.0 * clamped_sqrt(det, "concurrence_two_qubit_pure"), MeasureKind::Concurrence};
}

MeasureValue d_concurrence_pure(const PureState& psi) {
    const double det = complement_det(schmidt_weights(psi, psi.dA()), psi.dA());
    return {clamped_sqrt(det, "d_concurrence_pure"), MeasureKind::DConcurrence};
}

MeasureValue d_concurrence_pure_b(const PureState& psi) {
    const double det = complement_det(schmidt_weights(psi, psi.dB()), psi.dB());
    return {clamped_sqrt(det, "d_concurrence_pure_b"), MeasureKind::DConcurrence};
}

MeasureValue pure_measure(const PureState& psi, MeasureKind kind) {
    return kind == MeasureKind::Concurrence ? concurrence_pure(psi) : d_concurrence_pure(psi);
}

} // namespace dconc
