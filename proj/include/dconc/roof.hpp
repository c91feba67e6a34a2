#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dconc/measures.hpp"

namespace dconc {

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Eigenvalues of rho at or below this are treated as outside its support.
inline constexpr double kRankCutoff = 1e-12;

/// Search settings for the convex-roof minimizer.
struct RoofConfig {
    /// Number of ensemble members m. Unset means min(r^2, 16), but at least r.
    std::optional<std::size_t> ensemble_size;
    std::size_t restarts = 20;
    /// Maximum number of descent iterations per restart.
    std::size_t max_iterations = 2000;
    double step_tolerance = 1e-7;
    double value_tolerance = 1e-9;
    std::uint64_t rng_seed = 0;
    /// Extra starting isometries (r columns, at most m rows; zero-padded to m
    /// rows). Each runs as its own restart ahead of the random ones.
    std::vector<ComplexMatrix> warm_starts;
};

struct RoofEstimate {
    double value = 0.0;
    Decomposition decomposition;
    /// Largest closed-form lower bound known for the roof value of this state.
    double lower_bracket = 0.0;
    bool converged = false;
    /// m x r isometry realizing `decomposition`.
    ComplexMatrix isometry;
    std::size_t ensemble_size = 0;
    std::size_t rank = 0;
    std::size_t best_restart = 0;
    std::size_t iterations = 0; // summed over restarts
    std::vector<double> restart_values;
};

/// Eigen-ensemble of rho restricted to its support: rows sqrt(mu_j) v_j^T,
/// ordered by descending mu_j.
ComplexMatrix support_ensemble(const DensityMatrix& rho);

/// Ensemble sqrt(p_i) psi_i = sum_j u(i,j) sqrt(mu_j) v_j. `u` must be an
/// m x rank(rho) isometry; members with weight below 1e-14 are pruned.
Decomposition decomposition_from_isometry(const DensityMatrix& rho, const ComplexMatrix& u);

/// sum_i p_i measure(psi_i).
double average_measure(const Decomposition& dec, MeasureKind measure);

/// Multi-start local minimization of the ensemble average over the isometry
/// manifold. Every value returned is attained by the returned decomposition,
/// so it is an upper estimate of the roof.
RoofEstimate minimize_roof(const DensityMatrix& rho, MeasureKind measure, const RoofConfig& cfg = {});

/// Resolved ensemble size for a state of the given rank.
std::size_t default_ensemble_size(std::size_t rank);

/// Haar-distributed m x r isometry.
ComplexMatrix random_isometry(std::size_t m, std::size_t r, Rng& rng);

namespace detail {

/// p * measure(w / |w|) with p = |w|^2 for an unnormalized member w, plus the
/// gradient G (d value = Re sum conj(G_x) dw_x) when `grad` is non-empty.
double weighted_member_value(std::span<const Complex> w, std::size_t dA, std::size_t dB, MeasureKind kind,
                             std::span<Complex> grad = {});

} // namespace detail

} // namespace dconc
