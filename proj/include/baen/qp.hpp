#pragma once

#include "baen/kernel.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace baen {

struct SolverConfig {
    double inner_tol = 1e-8;
    /// 0 selects the default cap of 5000 * dim.
    long max_inner_iters = 0;

    void validate() const;
    long cap_for(Eigen::Index dim) const;
};

/// min 0.5 u'Hu - q'u  subject to  u >= 0.
///
/// Two storage forms share one interface. The dense form holds H explicitly.
/// The dual form is the weighted asymmetric elastic net dual: H is never
/// materialized, its columns are synthesized from the signed Gram matrix
/// K^ = D G D, the weights and (p, tau).
///
/// For tau > 0 the variables are u = (alpha, beta) and
///   H = [[K^ + A, -K^ + A/tau], [-K^ + A/tau, K^ + A/tau^2]],  A = diag(1/(p w)),
///   q = [(1/p) e ; -e + (1-p)/(p tau) e].
/// For tau = 0 the second block uses gamma = beta/tau, the multiplier of
/// xi >= 0, which keeps the limit finite:
///   H = [[K^ + A, A], [A, A]],  q = [(1/p) e ; (1-p)/p e].
class NonnegQp {
public:
    static NonnegQp dense(Matrix H, Vector q);
    static NonnegQp dual(std::shared_ptr<const Matrix> signed_gram, Vector omega, double p, double tau);

    Eigen::Index dim() const { return q_.size(); }
    const Vector& q() const { return q_; }
    double diag(Eigen::Index k) const;

    /// g += delta * H(:, k), in O(dim).
    void add_column(Eigen::Index k, double delta, Vector& g) const;

    Vector multiply(const Vector& u) const;
    double objective(const Vector& u) const;
    Matrix to_dense() const;

    bool is_dual() const { return static_cast<bool>(signed_gram_); }
    /// Number of samples behind a dual-form problem.
    Eigen::Index samples() const { return is_dual() ? signed_gram_->rows() : 0; }
    double tau() const { return tau_; }
    double p() const { return p_; }

private:
    NonnegQp() = default;

    Matrix H_;
    std::shared_ptr<const Matrix> signed_gram_;
    Vector inv_pw_;  // 1 / (p * omega_i)
    double p_ = 1.0;
    double tau_ = 0.0;
    Vector q_;
};

/// K^_ij = y_i y_j G_ij.
Matrix signed_gram(const Matrix& gram, const Vector& y);

/// Builds the dual of the weighted asymmetric elastic net subproblem.
/// Throws on non-positive weights, p outside (0,1], tau outside [0,1] or
/// label/Gram size mismatch.
NonnegQp assemble_dual(const Matrix& gram, const Vector& y, const Vector& omega, double p, double tau);

struct SolveResult {
    Vector u;
    long iterations = 0;
    bool converged = false;
    double objective = 0.0;
    double kkt = 0.0;
    /// Largest relative gap between the maintained Hu and a fresh product.
    double max_drift = 0.0;
};

/// Per-update hook: (iteration, objective after the update).
using SolveObserver = std::function<void(long, double)>;

/// Clipping dual coordinate descent. Each step picks the coordinate with
/// the largest gain (q_k - (Hu)_k)^2 / H_kk among those that can move, then
/// clips it at zero. Stops when that gain is <= inner_tol * (1 + |obj|),
/// when no coordinate can move, or at the iteration cap.
SolveResult solve_clipdcd(const NonnegQp& qp, const SolverConfig& config,
                          const std::optional<Vector>& warm_start = std::nullopt,
                          const SolveObserver& observer = {});

/// max_k max(|min(u_k, g_k)|, max(0, -g_k)) with g = Hu - q.
double kkt_residual(const NonnegQp& qp, const Vector& u);

} // namespace baen
