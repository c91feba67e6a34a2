#pragma once

#include "dconc/states.hpp"

namespace dconc {

enum class MeasureKind { Concurrence, DConcurrence };

const char* to_string(MeasureKind kind);

struct MeasureValue {
    double value;
    MeasureKind kind;
};

// Negative radicands within this window are floating noise and clamp to 0.
inline constexpr double kRadicandNoise = 1e-12;

/// sqrt(2 [1 - Tr rho_A^2]).
MeasureValue concurrence_pure(const PureState& psi);

/// Same quantity from the B marginal.
MeasureValue concurrence_pure_b(const PureState& psi);

/// sqrt(<psi|<psi| 4 P-^A (x) P-^B |psi>|psi>) with P- = (I - SWAP)/2 on each
/// doubled subsystem. Builds the twofold-copy observable explicitly.
MeasureValue concurrence_pure_twofold(const PureState& psi);

/// Spin-flip formula for two-qubit mixed states.
MeasureValue wootters_concurrence(const DensityMatrix& rho);

/// 2 sqrt(det rho_A) for two-qubit pure states.
MeasureValue concurrence_two_qubit_pure(const PureState& psi);

/// sqrt(det(I - rho_A)).
MeasureValue d_concurrence_pure(const PureState& psi);

/// sqrt(det(I - rho_B)); exploratory, the A-side is the definition.
MeasureValue d_concurrence_pure_b(const PureState& psi);

MeasureValue pure_measure(const PureState& psi, MeasureKind kind);

/// sqrt with the noise clamp; throws NumericalDomainError below -kRadicandNoise.
double clamped_sqrt(double radicand, const char* what);

} // namespace dconc
