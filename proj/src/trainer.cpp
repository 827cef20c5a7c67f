#include "baen/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace baen {

void TrainConfig::validate() const
{
    if (!(C > 0.0) || !std::isfinite(C))
        throw std::invalid_argument("train: C must be positive");
    if (!(loss.p() > 0.0))
        throw std::invalid_argument("train: p must lie in (0,1]");
    if (bounded && loss.lambda() != 1.0)
        throw std::invalid_argument("train: lambda must be 1 for bounded fits (absorbed into C)");
    if (!(hq_tol > 0.0))
        throw std::invalid_argument("train: hq_tol must be positive");
    if (hq_max_iters < 1)
        throw std::invalid_argument("train: hq_max_iters must be >= 1");
    solver.validate();
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"baen", "aen", "en", "bals-like", "bq-approx"};
    return names;
}

TrainConfig apply_preset(TrainConfig base, const std::string& name)
{
    const LossParams& l = base.loss;
    if (name == "baen") {
        base.bounded = true;
    } else if (name == "aen") {
        base.bounded = false;
    } else if (name == "en") {
        base.bounded = false;
        base.loss = LossParams(l.lambda(), l.eta(), 0.0, l.p());
    } else if (name == "bals-like") {
        base.bounded = true;
        base.loss = LossParams(l.lambda(), l.eta(), 1.0, 1.0);
    } else if (name == "bq-approx") {
        base.bounded = true;
        base.loss = LossParams(l.lambda(), l.eta(), l.tau(), 1e-3);
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    base.preset = name;
    return base;
}

Standardizer Standardizer::fit(const Matrix& X)
{
    Standardizer s;
    s.mean = X.colwise().mean().transpose();
    s.scale = Vector::Ones(X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double var = (X.col(j).array() - s.mean[j]).square().mean();
        if (var > 0.0)
            s.scale[j] = std::sqrt(var);
        else
            s.mean[j] = 0.0;  // constant column passes through untouched
    }
    return s;
}

Matrix Standardizer::apply(const Matrix& X) const
{
    Matrix out(X.rows(), X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        out.row(i) = apply(Vector(X.row(i).transpose())).transpose();
    return out;
}

Vector Standardizer::apply(const Vector& x) const
{
    if (x.size() != mean.size())
        throw std::invalid_argument("standardizer: dimension mismatch");
    return ((x - mean).array() / scale.array()).matrix();
}

double update_delta(double z, double eta, const LossParams& aen_params)
{
    const double d = 1.0 + eta * aen_loss(z, aen_params);
    return -1.0 / (d * d);
}

Vector weights_from_delta(const Vector& delta, double C, double eta)
{
    Vector omega(delta.size());
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
        if (!(delta[i] >= -1.0 && delta[i] < 0.0))
            throw std::invalid_argument("weights_from_delta: delta must lie in [-1, 0)");
        omega[i] = C * eta * (-delta[i]);
    }
    return omega;
}

namespace {

void check_training_data(const Matrix& X, const Vector& y)
{
    if (X.rows() != y.size())
        throw std::invalid_argument("fit: " + std::to_string(X.rows()) + " rows but "
                                    + std::to_string(y.size()) + " labels");
    if (X.rows() < 2)
        throw std::invalid_argument("fit: need at least two samples");
    if (!X.allFinite())
        throw std::invalid_argument("fit: non-finite feature value");
    bool pos = false, neg = false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] == 1.0)
            pos = true;
        else if (y[i] == -1.0)
            neg = true;
        else
            throw std::invalid_argument("fit: labels must be -1 or +1");
    }
    if (!pos || !neg)
        throw std::invalid_argument("fit: training data contains a single class");
}

// alpha - beta (tau > 0) or alpha (tau = 0, second block is gamma).
Vector dual_difference(const Vector& u, Eigen::Index n, double tau)
{
    return tau > 0.0 ? Vector(u.head(n) - u.tail(n)) : Vector(u.head(n));
}

double objective_from_margins(const Vector& c, const Vector& margins, const Matrix& khat,
                              const TrainConfig& cfg)
{
    double loss = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
        const double z = 1.0 - margins[i];
        loss += cfg.bounded ? baen_loss(z, cfg.loss) : aen_loss(z, cfg.loss);
    }
    return 0.5 * c.dot(khat * c) + cfg.C * loss;
}

void store_solution(Model& model, const Vector& u)
{
    const Eigen::Index n = model.samples();
    model.dual = u;
    model.alpha = u.head(n);
    if (model.config.loss.tau() > 0.0)
        model.beta = u.tail(n);
    else
        model.beta = Vector::Zero(n);
}

// Outer loop shared by fit and fit_continue. `model.dual` holds u^s and
// `model.diagnostics.hq_iterations` holds s.
void run_outer(Model& model, const Matrix& khat, int max_total)
{
    const TrainConfig& cfg = model.config;
    const Eigen::Index n = model.samples();
    const double tau = cfg.loss.tau();
    const double p = cfg.loss.p();
    const double eta = cfg.loss.eta();
    const auto khat_ptr = std::make_shared<const Matrix>(khat);
    FitDiagnostics& diag = model.diagnostics;

    Vector u = model.dual.size() == 2 * n ? model.dual : Vector::Zero(2 * n);

    if (!cfg.bounded) {
        const NonnegQp qp = NonnegQp::dual(khat_ptr, Vector::Constant(n, cfg.C), p, tau);
        const SolveResult res = solve_clipdcd(qp, cfg.solver);
        diag.hq_iterations = 1;
        diag.hq_converged = true;
        diag.last_step = (res.u - u).norm();
        diag.kkt = res.kkt;
        diag.inner_iterations += res.iterations;
        diag.inner_cap_hit = diag.inner_cap_hit || !res.converged;
        diag.max_drift = std::max(diag.max_drift, res.max_drift);
        const Vector c = dual_difference(res.u, n, tau);
        diag.objective_trace.push_back(objective_from_margins(c, khat * c, khat, cfg));
        store_solution(model, res.u);
        return;
    }

    Vector delta = Vector::Constant(n, -1.0);
    if (diag.hq_iterations > 0) {
        const Vector margins = khat * dual_difference(u, n, tau);
        for (Eigen::Index i = 0; i < n; ++i)
            delta[i] = update_delta(1.0 - margins[i], eta, cfg.loss);
    }

    while (diag.hq_iterations < max_total && !diag.hq_converged) {
        const Vector omega = weights_from_delta(delta, cfg.C, eta);
        diag.delta_range.emplace_back(delta.minCoeff(), delta.maxCoeff());
        const NonnegQp qp = NonnegQp::dual(khat_ptr, omega, p, tau);
        const SolveResult res = solve_clipdcd(qp, cfg.solver, u);

        diag.last_step = (res.u - u).norm();
        diag.kkt = res.kkt;
        diag.inner_iterations += res.iterations;
        diag.inner_cap_hit = diag.inner_cap_hit || !res.converged;
        diag.max_drift = std::max(diag.max_drift, res.max_drift);
        ++diag.hq_iterations;
        u = res.u;

        const Vector c = dual_difference(u, n, tau);
        const Vector margins = khat * c;
        diag.objective_trace.push_back(objective_from_margins(c, margins, khat, cfg));
        if (diag.last_step < cfg.hq_tol) {
            diag.hq_converged = true;
            break;
        }
        for (Eigen::Index i = 0; i < n; ++i)
            delta[i] = update_delta(1.0 - margins[i], eta, cfg.loss);
    }
    store_solution(model, u);
}

} // namespace

Model fit(const Matrix& X, const Vector& y, const TrainConfig& config)
{
    config.validate();
    check_training_data(X, y);
    Model model;
    model.support_X = X;
    model.y = y;
    model.config = config;
    const Matrix khat = signed_gram(gram_matrix(X, config.kernel), y);
    run_outer(model, khat, config.hq_max_iters);
    return model;
}

Model fit_standardized(const Matrix& X, const Vector& y, const TrainConfig& config)
{
    const Standardizer scaler = Standardizer::fit(X);
    Model model = fit(scaler.apply(X), y, config);
    model.scaler = scaler;
    return model;
}

Model fit_continue(const Model& model, int extra_iters)
{
    if (extra_iters < 0)
        throw std::invalid_argument("fit_continue: extra_iters must be >= 0");
    Model next = model;
    if (!next.config.bounded)
        return next;
    const Matrix khat = signed_gram(gram_matrix(next.support_X, next.config.kernel), next.y);
    run_outer(next, khat, next.diagnostics.hq_iterations + extra_iters);
    return next;
}

namespace {

Vector prepare(const Model& model, const Vector& x)
{
    if (x.size() != model.features())
        throw std::invalid_argument("decision_value: expected " + std::to_string(model.features())
                                    + " features, found " + std::to_string(x.size()));
    return model.scaler ? model.scaler->apply(x) : x;
}

double raw_decision(const Model& model, const Vector& x)
{
    double f = 0.0;
    for (Eigen::Index i = 0; i < model.samples(); ++i) {
        const Vector xi = model.support_X.row(i).transpose();
        f += model.y[i] * kernel_eval(x, xi, model.config.kernel) * (model.alpha[i] - model.beta[i]);
    }
    return f;
}

} // namespace

double decision_value(const Model& model, const Vector& x)
{
    return raw_decision(model, prepare(model, x));
}

Vector decision_values(const Model& model, const Matrix& X)
{
    if (X.cols() != model.features())
        throw std::invalid_argument("decision_values: expected " + std::to_string(model.features())
                                    + " features, found " + std::to_string(X.cols()));
    Vector f(X.rows());
#pragma omp parallel for schedule(static)
    for (Eigen::Index r = 0; r < X.rows(); ++r)
        f[r] = decision_value(model, X.row(r).transpose());
    return f;
}

Vector decision_values_serial(const Model& model, const Matrix& X)
{
    if (X.cols() != model.features())
        throw std::invalid_argument("decision_values: expected " + std::to_string(model.features())
                                    + " features, found " + std::to_string(X.cols()));
    Vector f(X.rows());
    for (Eigen::Index r = 0; r < X.rows(); ++r)
        f[r] = decision_value(model, X.row(r).transpose());
    return f;
}

Vector predict(const Model& model, const Matrix& X)
{
    const Vector f = decision_values(model, X);
    return f.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
}

Vector slacks(const Model& model, const Matrix& X, const Vector& y)
{
    if (X.rows() != y.size())
        throw std::invalid_argument("slacks: row/label count mismatch");
    const Vector f = decision_values(model, X);
    const double tau = model.config.loss.tau();
    Vector xi(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double m = y[i] * f[i];
        xi[i] = tau > 0.0 ? std::max(1.0 - m, tau * (m - 1.0)) : std::max(0.0, 1.0 - m);
    }
    return xi;
}

Vector expansion_coefficients(const Model& model)
{
    return model.y.cwiseProduct(model.alpha - model.beta);
}

double primal_objective(const Model& model, const Matrix& X, const Vector& y)
{
    if (X.rows() != y.size())
        throw std::invalid_argument("primal_objective: row/label count mismatch");
    const Vector c = expansion_coefficients(model);
    const Matrix G = gram_matrix(model.support_X, model.config.kernel);
    const Vector f = decision_values(model, X);
    const TrainConfig& cfg = model.config;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double z = 1.0 - y[i] * f[i];
        loss += cfg.bounded ? baen_loss(z, cfg.loss) : aen_loss(z, cfg.loss);
    }
    return 0.5 * c.dot(G * c) + cfg.C * loss;
}

} // namespace baen
