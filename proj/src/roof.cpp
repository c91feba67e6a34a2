#include "dconc/roof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dconc/bounds.hpp"

namespace dconc {

namespace {

constexpr double kPruneWeight = 1e-14;
constexpr double kIsometryTolerance = 1e-10;
constexpr std::size_t kPolishSweeps = 4;

// Determinant of a small complex matrix by partial-pivot elimination; `a` is
// clobbered.
Complex small_det(Complex* a, std::size_t n) {
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(a[r * n + col]);
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            det = -det;
        }
        const Complex d = a[col * n + col];
        det *= d;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = a[r * n + col] / d;
            for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
        }
    }
    return det;
}

/// Evaluates p * measure(w / |w|) directly on the unnormalized member w, and
/// optionally its gradient G with d value = Re sum conj(G) dw.
class MemberMeasure {
public:
    MemberMeasure(std::size_t dA, std::size_t dB, MeasureKind kind)
        : dA_(dA), dB_(dB), kind_(kind), marginal_(dA * dA), work_(dA * dA), scratch_(dA * dA), adj_(dA * dA),
          minor_((dA > 1 ? dA - 1 : 1) * (dA > 1 ? dA - 1 : 1)) {}

    double operator()(const Complex* w) { return evaluate(w, nullptr); }

    double evaluate(const Complex* w, Complex* grad) {
        for (std::size_t i = 0; i < dA_; ++i) {
            for (std::size_t j = i; j < dA_; ++j) {
                Complex s = 0.0;
                for (std::size_t k = 0; k < dB_; ++k) s += w[i * dB_ + k] * std::conj(w[j * dB_ + k]);
                marginal_[i * dA_ + j] = s;
                marginal_[j * dA_ + i] = std::conj(s);
            }
        }
        double p = 0.0;
        for (std::size_t i = 0; i < dA_; ++i) p += marginal_[i * dA_ + i].real();
        if (!(p > 1e-300)) return zero(grad);

        if (kind_ == MeasureKind::Concurrence) {
            // p C(w/|w|) = sqrt(2 [p^2 - Tr rho_A(w)^2])
            double tr2 = 0.0;
            for (const Complex& z : marginal_) tr2 += std::norm(z);
            const double f = std::sqrt(std::max(0.0, 2.0 * (p * p - tr2)));
            if (grad) {
                if (f < kKink) return zero(grad);
                // G = 4 (p w - rho_A C) / f
                for (std::size_t i = 0; i < dA_; ++i)
                    for (std::size_t k = 0; k < dB_; ++k) {
                        Complex s = 0.0;
                        for (std::size_t j = 0; j < dA_; ++j) s += marginal_[i * dA_ + j] * w[j * dB_ + k];
                        grad[i * dB_ + k] = 4.0 * (p * w[i * dB_ + k] - s) / f;
                    }
            }
            return f;
        }

        if (dA_ == 2) {
            // p D(w/|w|) = sqrt(det rho_A(w)) when dA = 2
            const double det = marginal_[0].real() * marginal_[3].real() - std::norm(marginal_[1]);
            const double f = std::sqrt(std::max(0.0, det));
            if (grad) {
                if (f < kKink) return zero(grad);
                // G = adj(rho_A) C / f
                adj_[0] = marginal_[3];
                adj_[1] = -marginal_[1];
                adj_[2] = -marginal_[2];
                adj_[3] = marginal_[0];
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t k = 0; k < dB_; ++k)
                        grad[i * dB_ + k] = (adj_[i * 2] * w[k] + adj_[i * 2 + 1] * w[dB_ + k]) / f;
            }
            return f;
        }

        // p D(w/|w|) = sqrt(det(p I - rho_A(w)) * p^(2 - dA))
        for (std::size_t i = 0; i < dA_ * dA_; ++i) work_[i] = -marginal_[i];
        for (std::size_t i = 0; i < dA_; ++i) work_[i * dA_ + i] += p;
        std::copy(work_.begin(), work_.end(), scratch_.begin());
        const double det = small_det(scratch_.data(), dA_).real();
        const double scale = std::pow(p, 2.0 - static_cast<double>(dA_));
        const double f = std::sqrt(std::max(0.0, det * scale));
        if (grad) {
            if (f < kKink) return zero(grad);
            adjugate();
            Complex trace_adj = 0.0;
            for (std::size_t i = 0; i < dA_; ++i) trace_adj += adj_[i * dA_ + i];
            const double dscale = det * (2.0 - static_cast<double>(dA_)) * std::pow(p, 1.0 - static_cast<double>(dA_));
            for (std::size_t i = 0; i < dA_; ++i)
                for (std::size_t k = 0; k < dB_; ++k) {
                    Complex s = 0.0;
                    for (std::size_t j = 0; j < dA_; ++j) s += adj_[i * dA_ + j] * w[j * dB_ + k];
                    const Complex wik = w[i * dB_ + k];
                    const Complex g_det = 2.0 * trace_adj.real() * wik - 2.0 * s;
                    grad[i * dB_ + k] = (scale * g_det + 2.0 * dscale * wik) / (2.0 * f);
                }
        }
        return f;
    }

private:
    static constexpr double kKink = 1e-14;

    double zero(Complex* grad) const {
        if (grad) std::fill(grad, grad + dA_ * dB_, Complex(0.0));
        return 0.0;
    }

    // adj_ = adjugate of work_ by cofactors
    void adjugate() {
        const std::size_t n = dA_;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t idx = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == r) continue;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j == c) continue;
                        minor_[idx++] = work_[i * n + j];
                    }
                }
                const Complex cof = small_det(minor_.data(), n - 1) * (((r + c) % 2 == 0) ? 1.0 : -1.0);
                adj_[c * n + r] = cof;
            }
        }
    }

    std::size_t dA_;
    std::size_t dB_;
    MeasureKind kind_;
    std::vector<Complex> marginal_;
    std::vector<Complex> work_;
    std::vector<Complex> scratch_;
    std::vector<Complex> adj_;
    std::vector<Complex> minor_;
};

/// Sum of member values for the ensemble U * support, with the Euclidean
/// gradient in U.
class RoofObjective {
public:
    RoofObjective(const ComplexMatrix& ensemble, std::size_t dA, std::size_t dB, MeasureKind kind)
        : ensemble_(ensemble), n_(static_cast<std::size_t>(ensemble.cols())), measure_(dA, dB, kind), grad_row_(n_) {}

    double value(const ComplexMatrix& u) { return evaluate(u, nullptr); }

    double evaluate(const ComplexMatrix& u, ComplexMatrix* grad_u) {
        members_.noalias() = u * ensemble_;
        if (grad_u) grad_w_.resize(members_.rows(), members_.cols());
        double total = 0.0;
        for (Eigen::Index i = 0; i < members_.rows(); ++i) {
            row_ = members_.row(i).transpose();
            total += measure_.evaluate(row_.data(), grad_u ? grad_row_.data() : nullptr);
            if (grad_u)
                for (std::size_t x = 0; x < n_; ++x) grad_w_(i, static_cast<Eigen::Index>(x)) = grad_row_[x];
        }
        if (grad_u) grad_u->noalias() = grad_w_ * ensemble_.adjoint();
        return total;
    }

private:
    const ComplexMatrix& ensemble_;
    std::size_t n_;
    MemberMeasure measure_;
    ComplexMatrix members_;
    ComplexMatrix grad_w_;
    ComplexVector row_;
    std::vector<Complex> grad_row_;
};

double inner(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.adjoint() * b).trace().real(); }

// Cayley retraction (I - t/2 X)^-1 (I + t/2 X) u for skew-Hermitian X.
ComplexMatrix cayley_step(const ComplexMatrix& direction, const ComplexMatrix& u, double t) {
    const auto m = direction.rows();
    const ComplexMatrix lhs = ComplexMatrix::Identity(m, m) - (0.5 * t) * direction;
    const ComplexMatrix rhs = u + (0.5 * t) * (direction * u);
    return lhs.partialPivLu().solve(rhs);
}

struct GradientResult {
    ComplexMatrix isometry;
    double value;
    std::size_t iterations;
};

// Polak-Ribiere conjugate gradient over left unitary actions on the
// isometry, with Armijo backtracking along Cayley curves.
GradientResult conjugate_gradient(RoofObjective& objective, ComplexMatrix u, std::size_t max_iterations,
                                  double step_tolerance, double value_tolerance) {
    ComplexMatrix grad;
    double value = objective.evaluate(u, &grad);
    ComplexMatrix riemannian = grad * u.adjoint() - u * grad.adjoint();
    ComplexMatrix direction = -riemannian;
    ComplexMatrix previous = riemannian;
    double step = 1.0 / std::max(1.0, riemannian.norm());
    std::size_t stalled = 0;
    std::size_t it = 0;
    for (; it < max_iterations; ++it) {
        // d/dt f(u(t)) at t = 0 along direction * u
        double slope = inner(grad, direction * u);
        if (!(slope < 0.0)) {
            direction = -riemannian;
            slope = inner(grad, direction * u);
            if (!(slope < 0.0)) break;
        }
        double t = step * 2.0;
        ComplexMatrix candidate;
        double next = value;
        bool accepted = false;
        for (int backtrack = 0; backtrack < 60; ++backtrack) {
            candidate = cayley_step(direction, u, t);
            next = objective.value(candidate);
            if (next <= value + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
        const double moved = t * direction.norm();
        const double gain = value - next;
        u = std::move(candidate);
        step = t;

        value = objective.evaluate(u, &grad);
        previous.swap(riemannian);
        riemannian = grad * u.adjoint() - u * grad.adjoint();
        const double beta = std::max(0.0, inner(riemannian, riemannian - previous) / std::max(inner(previous, previous), 1e-300));
        direction = -riemannian + beta * direction;

        if (gain < value_tolerance || moved < step_tolerance) {
            if (++stalled >= 3) {
                ++it;
                break;
            }
        } else {
            stalled = 0;
        }
    }
    // Cayley solves drift off the manifold at roundoff level; re-orthonormalize
    Eigen::HouseholderQR<ComplexMatrix> qr(u);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(u.rows(), u.cols());
    const ComplexMatrix r = qr.matrixQR().topRows(u.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return {q, objective.value(q), it};
}

// Coordinate descent over complex Givens rotations acting on row pairs of the
// isometry; the member matrix W = U * support ensemble is rotated alongside so
// only the two touched members are re-evaluated.
class IsometryDescent {
public:
    IsometryDescent(const ComplexMatrix& ensemble, ComplexMatrix start, std::size_t dA, std::size_t dB,
                    MeasureKind kind)
        : u_(std::move(start)), n_(static_cast<std::size_t>(ensemble.cols())), measure_(dA, dB, kind),
          trial_i_(n_), trial_k_(n_) {
        m_ = static_cast<std::size_t>(u_.rows());
        const ComplexMatrix w = u_ * ensemble;
        members_.resize(m_ * n_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t c = 0; c < n_; ++c)
                members_[i * n_ + c] = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
        values_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) values_[i] = measure_(&members_[i * n_]);
    }

    double value() const {
        double total = 0.0;
        for (double v : values_) total += v;
        return total;
    }

    const ComplexMatrix& isometry() const { return u_; }

    /// One pass over all pairs and both phase families. Returns the largest
    /// accepted rotation angle.
    double sweep(double step_tolerance) {
        double largest = 0.0;
        for (const double phase : {0.0, std::numbers::pi / 2}) {
            const Complex e = std::polar(1.0, phase);
            for (std::size_t i = 0; i + 1 < m_; ++i) {
                for (std::size_t k = i + 1; k < m_; ++k) {
                    const double angle = optimize_pair(i, k, e, step_tolerance);
                    largest = std::max(largest, std::abs(angle));
                }
            }
        }
        return largest;
    }

private:
    // Pair objective as a function of the rotation angle; period pi/2.
    double pair_value(std::size_t i, std::size_t k, Complex e, double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex* wi = &members_[i * n_];
        const Complex* wk = &members_[k * n_];
        for (std::size_t x = 0; x < n_; ++x) {
            trial_i_[x] = c * wi[x] - e * s * wk[x];
            trial_k_[x] = std::conj(e) * s * wi[x] + c * wk[x];
        }
        return measure_(trial_i_.data()) + measure_(trial_k_.data());
    }

    double optimize_pair(std::size_t i, std::size_t k, Complex e, double step_tolerance) {
        const double base = values_[i] + values_[k];
        if (base == 0.0) return 0.0;

        constexpr int kGrid = 8;
        constexpr double kPeriod = std::numbers::pi / 2;
        constexpr double kSpacing = kPeriod / kGrid;
        std::array<double, kGrid> grid{};
        grid[0] = base;
        int best = 0;
        for (int g = 1; g < kGrid; ++g) {
            grid[g] = pair_value(i, k, e, g * kSpacing);
            if (grid[g] < grid[best]) best = g;
        }

        // golden-section refinement inside the neighbouring grid cells
        constexpr double kInvPhi = 0.6180339887498949;
        double lo = (best - 1) * kSpacing;
        double hi = (best + 1) * kSpacing;
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = pair_value(i, k, e, x1);
        double f2 = pair_value(i, k, e, x2);
        while (hi - lo > step_tolerance) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kInvPhi * (hi - lo);
                f1 = pair_value(i, k, e, x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kInvPhi * (hi - lo);
                f2 = pair_value(i, k, e, x2);
            }
        }
        double theta = f1 < f2 ? x1 : x2;
        double candidate = std::min(f1, f2);
        if (grid[best] < candidate) {
            theta = best * kSpacing;
            candidate = grid[best];
        }
        if (!(candidate < base)) return 0.0;

        apply(i, k, e, theta);
        return std::remainder(theta, kPeriod);
    }

    void apply(std::size_t i, std::size_t k, Complex e, double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Complex* wi = &members_[i * n_];
        Complex* wk = &members_[k * n_];
        for (std::size_t x = 0; x < n_; ++x) {
            const Complex a = wi[x];
            const Complex b = wk[x];
            wi[x] = c * a - e * s * b;
            wk[x] = std::conj(e) * s * a + c * b;
        }
        const auto ri = static_cast<Eigen::Index>(i);
        const auto rk = static_cast<Eigen::Index>(k);
        for (Eigen::Index col = 0; col < u_.cols(); ++col) {
            const Complex a = u_(ri, col);
            const Complex b = u_(rk, col);
            u_(ri, col) = c * a - e * s * b;
            u_(rk, col) = std::conj(e) * s * a + c * b;
        }
        values_[i] = measure_(wi);
        values_[k] = measure_(wk);
    }

    ComplexMatrix u_;
    std::size_t m_ = 0;
    std::size_t n_;
    MemberMeasure measure_;
    std::vector<Complex> members_;
    std::vector<double> values_;
    std::vector<Complex> trial_i_;
    std::vector<Complex> trial_k_;
};

struct RestartResult {
    double value;
    ComplexMatrix isometry;
    std::size_t iterations;
    bool settled;
};

RestartResult descend(const ComplexMatrix& ensemble, ComplexMatrix start, const DensityMatrix& rho, MeasureKind kind,
                      const RoofConfig& cfg) {
    RoofObjective objective(ensemble, rho.dA(), rho.dB(), kind);
    GradientResult smooth =
        conjugate_gradient(objective, std::move(start), cfg.max_iterations, cfg.step_tolerance, cfg.value_tolerance);

    // derivative-free polish; handles members sitting on the sqrt kink at 0
    IsometryDescent descent(ensemble, std::move(smooth.isometry), rho.dA(), rho.dB(), kind);
    double value = descent.value();
    std::size_t iterations = smooth.iterations;
    bool settled = smooth.iterations < cfg.max_iterations;
    for (std::size_t sweep = 0; sweep < kPolishSweeps; ++sweep) {
        const double largest_step = descent.sweep(cfg.step_tolerance);
        ++iterations;
        const double next = descent.value();
        const double gain = value - next;
        value = next;
        if (gain < cfg.value_tolerance || largest_step < cfg.step_tolerance) break;
        settled = false;
    }
    return {value, descent.isometry(), iterations, settled};
}

double closed_form_bracket(const DensityMatrix& rho, MeasureKind kind) {
    double bracket = 0.0;
    if (kind == MeasureKind::Concurrence) {
        bracket = std::sqrt(std::max(0.0, mb_lower_bound_c2(rho)));
        if (rho.dA() == 2 && rho.dB() == 2) bracket = std::max(bracket, wootters_concurrence(rho).value);
    } else {
        bracket = std::sqrt(std::max(0.0, d_lower_bound(rho)));
        if (rho.dA() == 2 && rho.dB() == 2) bracket = std::max(bracket, 0.5 * wootters_concurrence(rho).value);
    }
    return bracket;
}

void validate(const RoofConfig& cfg, std::size_t rank) {
    if (cfg.restarts < 1 && cfg.warm_starts.empty()) throw ConfigError("RoofConfig: restarts must be >= 1");
    if (!(cfg.step_tolerance > 0.0) || !(cfg.value_tolerance > 0.0)) {
        throw ConfigError("RoofConfig: tolerances must be positive");
    }
    if (cfg.ensemble_size) {
        const std::size_t m = *cfg.ensemble_size;
        if (m < rank || m > rank * rank) {
            throw ConfigError("RoofConfig: ensemble size " + std::to_string(m) + " outside [" + std::to_string(rank) +
                              ", " + std::to_string(rank * rank) + "] for rank " + std::to_string(rank));
        }
    }
}

ComplexMatrix padded(const ComplexMatrix& start, std::size_t m, std::size_t r) {
    if (static_cast<std::size_t>(start.cols()) != r || static_cast<std::size_t>(start.rows()) > m) {
        throw ConfigError("RoofConfig: warm start has shape " + std::to_string(start.rows()) + "x" +
                          std::to_string(start.cols()) + ", expected at most " + std::to_string(m) + " rows and " +
                          std::to_string(r) + " columns");
    }
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(r));
    out.topRows(start.rows()) = start;
    return out;
}

} // namespace

namespace detail {

double weighted_member_value(std::span<const Complex> w, std::size_t dA, std::size_t dB, MeasureKind kind,
                             std::span<Complex> grad) {
    if (w.size() != dA * dB || (!grad.empty() && grad.size() != w.size())) {
        throw DimensionError("weighted_member_value: vector length does not match dimensions");
    }
    MemberMeasure measure(dA, dB, kind);
    return measure.evaluate(w.data(), grad.empty() ? nullptr : grad.data());
}

} // namespace detail

std::size_t default_ensemble_size(std::size_t rank) { return std::max(rank, std::min<std::size_t>(rank * rank, 16)); }

ComplexMatrix support_ensemble(const DensityMatrix& rho) {
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    std::vector<Eigen::Index> kept;
    for (std::size_t j = es.eigenvalues.size(); j-- > 0;)
        if (es.eigenvalues[j] > kRankCutoff) kept.push_back(static_cast<Eigen::Index>(j));
    ComplexMatrix rows(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(rho.dim()));
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const double weight = std::sqrt(es.eigenvalues[static_cast<std::size_t>(kept[r])]);
        rows.row(static_cast<Eigen::Index>(r)) = weight * es.eigenvectors.col(kept[r]).transpose();
    }
    return rows;
}

Decomposition decomposition_from_isometry(const DensityMatrix& rho, const ComplexMatrix& u) {
    const ComplexMatrix ensemble = support_ensemble(rho);
    if (u.cols() != ensemble.rows()) {
        throw DomainError("decomposition_from_isometry: isometry has " + std::to_string(u.cols()) +
                          " columns, state rank is " + std::to_string(ensemble.rows()));
    }
    if (u.rows() < u.cols()) throw DomainError("decomposition_from_isometry: isometry has fewer rows than columns");
    const double defect =
        (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
    if (!(defect <= kIsometryTolerance)) {
        throw DomainError("decomposition_from_isometry: columns are not orthonormal (defect " +
                          std::to_string(defect) + ")");
    }
    const ComplexMatrix w = u * ensemble;
    Decomposition dec;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        const double weight = w.row(i).squaredNorm();
        if (weight < kPruneWeight) continue;
        dec.weights.push_back(weight);
        dec.members.push_back(PureState::normalized(rho.dA(), rho.dB(), w.row(i).transpose()));
    }
    return dec;
}

double average_measure(const Decomposition& dec, MeasureKind measure) {
    double total = 0.0;
    for (std::size_t i = 0; i < dec.members.size(); ++i) total += dec.weights[i] * pure_measure(dec.members[i], measure).value;
    return total;
}

ComplexMatrix random_isometry(std::size_t m, std::size_t r, Rng& rng) {
    const ComplexMatrix q = haar_random_unitary(m, rng);
    return q.leftCols(static_cast<Eigen::Index>(r));
}

RoofEstimate minimize_roof(const DensityMatrix& rho, MeasureKind measure, const RoofConfig& cfg) {
    const ComplexMatrix ensemble = support_ensemble(rho);
    const auto rank = static_cast<std::size_t>(ensemble.rows());
    validate(cfg, rank);
    const std::size_t m = cfg.ensemble_size.value_or(default_ensemble_size(rank));

    RoofEstimate est;
    est.rank = rank;
    est.ensemble_size = m;
    est.lower_bracket = closed_form_bracket(rho, measure);

    if (rank == 1) {
        // the support holds a single pure state
        est.isometry = ComplexMatrix::Identity(1, 1);
        est.decomposition = decomposition_from_isometry(rho, est.isometry);
        est.value = average_measure(est.decomposition, measure);
        est.restart_values = {est.value};
        est.converged = true;
        return est;
    }

    std::vector<RestartResult> results;
    results.reserve(cfg.warm_starts.size() + cfg.restarts);
    for (const ComplexMatrix& start : cfg.warm_starts) {
        results.push_back(descend(ensemble, padded(start, m, rank), rho, measure, cfg));
    }
    for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
        Rng rng(derive_seed(cfg.rng_seed, restart));
        results.push_back(descend(ensemble, random_isometry(m, rank, rng), rho, measure, cfg));
    }

    std::size_t best = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        est.restart_values.push_back(results[i].value);
        est.iterations += results[i].iterations;
        if (results[i].value < results[best].value) best = i;
    }
    est.best_restart = best;
    est.isometry = results[best].isometry;
    est.decomposition = decomposition_from_isometry(rho, est.isometry);
    est.value = average_measure(est.decomposition, measure);

    if (results.size() >= 2) {
        std::vector<double> sorted = est.restart_values;
        std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end());
        est.converged = sorted[1] - sorted[0] <= 10.0 * cfg.value_tolerance;
    } else {
        est.converged = results[best].settled;
    }
    return est;
}

} // namespace dconc
