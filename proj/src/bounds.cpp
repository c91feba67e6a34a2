#include "dconc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace dconc {

const char* to_string(WitnessResult w) {
    return w == WitnessResult::EntangledCertified ? "entangled_certified" : "inconclusive";
}

double mb_lower_bound_c2(const DensityMatrix& rho) {
    return 2.0 * (purity(rho.matrix()) - purity(reduced_density(rho, Subsystem::A)));
}

double purity_upper_bound_c2(const DensityMatrix& rho) {
    return 2.0 * (1.0 - purity(reduced_density(rho, Subsystem::A)));
}

double d_upper_bound(const DensityMatrix& rho) {
    return det_hermitian(identity(rho.dA()) - reduced_density(rho, Subsystem::A));
}

double d_lower_bound(const DensityMatrix& rho) {
    return d_upper_bound(rho) - det_hermitian(identity(rho.dim()) - rho.matrix());
}

WitnessResult separability_witness(const DensityMatrix& rho) {
    return d_lower_bound(rho) > kWitnessTolerance ? WitnessResult::EntangledCertified : WitnessResult::Inconclusive;
}

BoundReport bound_report(const DensityMatrix& rho) {
    BoundReport r{};
    r.mb_lower_c2 = mb_lower_bound_c2(rho);
    r.purity_upper_c2 = purity_upper_bound_c2(rho);
    r.d_upper = d_upper_bound(rho);
    r.d_lower = d_lower_bound(rho);
    r.witness_entangled = r.d_lower > kWitnessTolerance;
    return r;
}

MajorizationResult majorization(const RealVector& x, const RealVector& y) {
    RealVector xs = x;
    RealVector ys = y;
    const std::size_t n = std::max(xs.size(), ys.size());
    xs.resize(n, 0.0);
    ys.resize(n, 0.0);
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::sort(ys.begin(), ys.end(), std::greater<>());

    MajorizationResult result{true, false};
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sx += xs[k];
        sy += ys[k];
        if (k + 1 < n && sx > sy + kMajorizationPartialTolerance) result.majorized = false;
    }
    if (std::abs(sx - sy) > kMajorizationTotalTolerance) {
        result.majorized = false;
        result.total_mismatch = true;
    }
    return result;
}

bool majorizes(const RealVector& x, const RealVector& y) { return majorization(x, y).majorized; }

NielsenKempeResult nielsen_kempe_check(const DensityMatrix& rho) {
    const RealVector joint = hermitian_eigenvalues(rho.matrix());
    const RealVector marginal_a = hermitian_eigenvalues(reduced_density(rho, Subsystem::A));
    const RealVector marginal_b = hermitian_eigenvalues(reduced_density(rho, Subsystem::B));
    return {majorizes(joint, marginal_a), majorizes(joint, marginal_b)};
}

bool det_superadditivity_check(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "det_superadditivity_check");
    require_square(b, "det_superadditivity_check");
    if (a.rows() != b.rows()) throw DimensionError("det_superadditivity_check: dimensions differ");
    for (const ComplexMatrix* m : {&a, &b}) {
        const RealVector spectrum = hermitian_eigenvalues(*m);
        if (spectrum.front() < -1e-12) {
            throw DomainError("det_superadditivity_check: input is not positive semidefinite");
        }
    }
    const double joint = det_hermitian(a + b);
    return joint >= det_hermitian(a) + det_hermitian(b) - 1e-12 * std::max(1.0, std::abs(joint));
}

} // namespace dconc
