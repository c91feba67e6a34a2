#pragma once

#include "dconc/states.hpp"

namespace dconc {

// d_lower_bound must exceed this to certify entanglement.
inline constexpr double kWitnessTolerance = 1e-12;
inline constexpr double kMajorizationPartialTolerance = 1e-12;
inline constexpr double kMajorizationTotalTolerance = 1e-10;

struct BoundReport {
    double mb_lower_c2;     // 2[Tr rho^2 - Tr rho_A^2]
    double purity_upper_c2; // 2[1 - Tr rho_A^2]
    double d_upper;         // det(I - rho_A)
    double d_lower;         // det(I - rho_A) - det(I - rho)
    bool witness_entangled;
};

enum class WitnessResult { EntangledCertified, Inconclusive };

const char* to_string(WitnessResult w);

struct MajorizationResult {
    bool majorized;      // x is majorized by y
    bool total_mismatch; // totals differ beyond kMajorizationTotalTolerance
};

struct NielsenKempeResult {
    bool pass_A;
    bool pass_B;
};

/// Lower bound on C^2; may be negative, returned raw.
double mb_lower_bound_c2(const DensityMatrix& rho);

/// Upper bound on C^2 from the marginal purity.
double purity_upper_bound_c2(const DensityMatrix& rho);

/// det(I - rho_A), an upper bound on D^2.
double d_upper_bound(const DensityMatrix& rho);

/// det(I - rho_A) - det(I - rho). Nonpositive on separable states; positive
/// values certify entanglement. Also the conjectured lower bound on D^2.
double d_lower_bound(const DensityMatrix& rho);

WitnessResult separability_witness(const DensityMatrix& rho);

BoundReport bound_report(const DensityMatrix& rho);

/// Whether x is majorized by y after descending sort and zero padding.
MajorizationResult majorization(const RealVector& x, const RealVector& y);
bool majorizes(const RealVector& x, const RealVector& y);

/// lambda(rho) against lambda(rho_A) and lambda(rho_B). A false entry certifies
/// entanglement.
NielsenKempeResult nielsen_kempe_check(const DensityMatrix& rho);

/// det(a + b) >= det(a) + det(b) - 1e-12 for Hermitian PSD a, b.
bool det_superadditivity_check(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace dconc
