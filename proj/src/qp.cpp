#include "baen/qp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace baen {

void SolverConfig::validate() const
{
    if (!(inner_tol > 0.0))
        throw std::invalid_argument("solver: inner_tol must be positive");
    if (max_inner_iters < 0)
        throw std::invalid_argument("solver: max_inner_iters must be >= 1 (or 0 for default)");
}

long SolverConfig::cap_for(Eigen::Index dim) const
{
    return max_inner_iters > 0 ? max_inner_iters : 5000L * static_cast<long>(dim);
}

NonnegQp NonnegQp::dense(Matrix H, Vector q)
{
    if (H.rows() != H.cols() || H.rows() != q.size() || q.size() == 0)
        throw std::invalid_argument("qp: H must be square and match q");
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
        if (!(H(i, i) > 0.0))
            throw std::invalid_argument("qp: diagonal of H must be strictly positive");
        for (Eigen::Index j = 0; j < i; ++j)
            if (H(i, j) != H(j, i))
                throw std::invalid_argument("qp: H must be symmetric");
    }
    NonnegQp qp;
    qp.H_ = std::move(H);
    qp.q_ = std::move(q);
    return qp;
}

NonnegQp NonnegQp::dual(std::shared_ptr<const Matrix> signed_gram, Vector omega, double p, double tau)
{
    const Eigen::Index n = omega.size();
    if (!signed_gram || signed_gram->rows() != n || signed_gram->cols() != n || n == 0)
        throw std::invalid_argument("qp: Gram matrix and weight vector sizes differ");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("qp: p must lie in (0,1], got " + std::to_string(p));
    if (!(tau >= 0.0 && tau <= 1.0))
        throw std::invalid_argument("qp: tau must lie in [0,1], got " + std::to_string(tau));
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(omega[i] > 0.0) || !std::isfinite(omega[i]))
            throw std::invalid_argument("qp: weight " + std::to_string(i) + " is not positive");

    NonnegQp qp;
    qp.signed_gram_ = std::move(signed_gram);
    qp.p_ = p;
    qp.tau_ = tau;
    qp.inv_pw_ = (p * omega.array()).inverse().matrix();
    qp.q_.resize(2 * n);
    const double l1 = (1.0 - p) / p;
    qp.q_.head(n).setConstant(1.0 + l1);
    qp.q_.tail(n).setConstant(tau > 0.0 ? -1.0 + l1 / tau : l1);
    return qp;
}

double NonnegQp::diag(Eigen::Index k) const
{
    if (!is_dual())
        return H_(k, k);
    const Eigen::Index n = samples();
    if (k < n)
        return (*signed_gram_)(k, k) + inv_pw_[k];
    const Eigen::Index i = k - n;
    if (tau_ > 0.0)
        return (*signed_gram_)(i, i) + inv_pw_[i] / (tau_ * tau_);
    return inv_pw_[i];
}

void NonnegQp::add_column(Eigen::Index k, double delta, Vector& g) const
{
    if (!is_dual()) {
        g.noalias() += delta * H_.col(k);
        return;
    }
    const Eigen::Index n = samples();
    const bool first = k < n;
    const Eigen::Index i = first ? k : k - n;
    const double a = inv_pw_[i] * delta;
    if (tau_ > 0.0) {
        // alpha and beta enter the kernel part through alpha - beta only
        const double sgn = first ? delta : -delta;
        g.head(n).noalias() += sgn * signed_gram_->col(i);
        g.tail(n).noalias() -= sgn * signed_gram_->col(i);
        if (first) {
            g[i] += a;
            g[n + i] += a / tau_;
        } else {
            g[i] += a / tau_;
            g[n + i] += a / (tau_ * tau_);
        }
        return;
    }
    if (first)
        g.head(n).noalias() += delta * signed_gram_->col(i);
    g[i] += a;
    g[n + i] += a;
}

Vector NonnegQp::multiply(const Vector& u) const
{
    if (!is_dual())
        return H_ * u;
    const Eigen::Index n = samples();
    Vector out(2 * n);
    if (tau_ > 0.0) {
        const Vector v = *signed_gram_ * (u.head(n) - u.tail(n));
        const Vector s = inv_pw_.cwiseProduct(u.head(n) + u.tail(n) / tau_);
        out.head(n) = v + s;
        out.tail(n) = -v + s / tau_;
    } else {
        const Vector s = inv_pw_.cwiseProduct(u.head(n) + u.tail(n));
        out.head(n) = *signed_gram_ * u.head(n) + s;
        out.tail(n) = s;
    }
    return out;
}

double NonnegQp::objective(const Vector& u) const
{
    return 0.5 * u.dot(multiply(u)) - q_.dot(u);
}

Matrix NonnegQp::to_dense() const
{
    if (!is_dual())
        return H_;
    const Eigen::Index d = dim();
    Matrix H = Matrix::Zero(d, d);
    Vector col = Vector::Zero(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        col.setZero();
        add_column(k, 1.0, col);
        H.col(k) = col;
    }
    return H;
}

Matrix signed_gram(const Matrix& gram, const Vector& y)
{
    if (gram.rows() != y.size() || gram.cols() != y.size())
        throw std::invalid_argument("signed_gram: label count does not match Gram size");
    return y.asDiagonal() * gram * y.asDiagonal();
}

NonnegQp assemble_dual(const Matrix& gram, const Vector& y, const Vector& omega, double p, double tau)
{
    if (!(p > 0.0))
        throw std::invalid_argument("assemble_dual: p must be positive");
    return NonnegQp::dual(std::make_shared<const Matrix>(signed_gram(gram, y)), omega, p, tau);
}

namespace {

constexpr long kDriftInterval = 10000;

} // namespace

SolveResult solve_clipdcd(const NonnegQp& qp, const SolverConfig& config,
                          const std::optional<Vector>& warm_start, const SolveObserver& observer)
{
    config.validate();
    const Eigen::Index dim = qp.dim();
    const Vector& q = qp.q();

    SolveResult res;
    res.u = Vector::Zero(dim);
    if (warm_start) {
        if (warm_start->size() != dim)
            throw std::invalid_argument("solve_clipdcd: warm start has wrong dimension");
        if ((warm_start->array() < 0.0).any())
            throw std::invalid_argument("solve_clipdcd: warm start must be nonnegative");
        res.u = *warm_start;
    }
    Vector& u = res.u;
    Vector hu = qp.multiply(u);
    double obj = 0.5 * u.dot(hu) - q.dot(u);

    Vector diag(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        diag[k] = qp.diag(k);

    const long cap = config.cap_for(dim);
    while (true) {
        Eigen::Index best = -1;
        double best_gain = 0.0;
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double r = q[k] - hu[k];
            if (r > 0.0 || (r < 0.0 && u[k] > 0.0)) {
                const double gain = r * r / diag[k];
                if (gain > best_gain) {
                    best_gain = gain;
                    best = k;
                }
            }
        }
        if (best < 0 || best_gain <= config.inner_tol * (1.0 + std::abs(obj))) {
            res.converged = true;
            break;
        }
        if (res.iterations >= cap)
            break;

        const double r = q[best] - hu[best];
        const double next = std::max(0.0, u[best] + r / diag[best]);
        const double delta = next - u[best];
        u[best] = next;
        obj += delta * (-r) + 0.5 * diag[best] * delta * delta;
        qp.add_column(best, delta, hu);
        ++res.iterations;

        if (res.iterations % kDriftInterval == 0) {
            const Vector fresh = qp.multiply(u);
            const double drift = (fresh - hu).norm() / std::max(1.0, fresh.norm());
            res.max_drift = std::max(res.max_drift, drift);
            hu = fresh;
            obj = 0.5 * u.dot(hu) - q.dot(u);
        }
        if (observer)
            observer(res.iterations, obj);
    }
    res.objective = qp.objective(u);
    res.kkt = kkt_residual(qp, u);
    return res;
}

double kkt_residual(const NonnegQp& qp, const Vector& u)
{
    const Vector g = qp.multiply(u) - qp.q();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        const double comp = std::abs(std::min(u[k], g[k]));
        worst = std::max({worst, comp, std::max(0.0, -g[k])});
    }
    return worst;
}

} // namespace baen
