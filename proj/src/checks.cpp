#include "baen/checks.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace baen {

VtubReport vtub_check(const Model& model, const Dataset& ds)
{
    if (ds.rows() != model.samples())
        throw std::invalid_argument("vtub_check: dataset is not the model's training set");
    VtubReport rep;
    const double p = model.config.loss.p();
    if (!(p > 0.0 && p < 1.0)) {
        rep.hypothesis_met = false;
        rep.note = "hypothesis not met: p = " + std::to_string(p) + " is outside (0,1)";
    } else if (model.config.loss.tau() <= 0.0) {
        rep.hypothesis_met = false;
        rep.note = "hypothesis not met: tau = 0";
    }

    const Eigen::Index n = model.samples();
    const bool linear = model.config.kernel.kind() == KernelKind::Linear;
    const Matrix features = linear ? model.support_X : base_kernel_matrix(model.support_X, model.config.kernel);
    Matrix Xt(n, features.cols() + 1);
    Xt << features, Vector::Ones(n);

    const Eigen::SelfAdjointEigenSolver<Matrix> eig(Xt.transpose() * Xt, Eigen::EigenvaluesOnly);
    rep.theta_min = eig.eigenvalues().minCoeff();
    rep.theta_max = eig.eigenvalues().maxCoeff();
    rep.frobenius = Xt.norm();
    const double scale = p * (rep.theta_min + p * rep.theta_max) * std::sqrt(static_cast<double>(n)) * rep.frobenius;

    const Vector xi = slacks(model, ds.X, ds.y);
    long satisfied = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(xi[i] > kViolationTol))
            continue;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (!(xi[j] > kViolationTol) || model.y[i] != model.y[j])
                continue;
            VtubPair pr;
            pr.i = static_cast<int>(i);
            pr.j = static_cast<int>(j);
            pr.slack_gap = std::abs(xi[i] - xi[j]);
            pr.distance = (features.row(i) - features.row(j)).norm();
            pr.bound = scale * pr.distance;
            pr.satisfied = pr.slack_gap <= pr.bound;
            satisfied += pr.satisfied ? 1 : 0;
            rep.pairs.push_back(pr);
        }
    }
    if (!rep.pairs.empty())
        rep.satisfaction_rate = static_cast<double>(satisfied) / static_cast<double>(rep.pairs.size());
    return rep;
}

FisherProbe fisher_probe(const LossParams& params, double prob_positive, double v_min, double v_max, double step)
{
    if (!(prob_positive > 0.0 && prob_positive < 1.0))
        throw std::invalid_argument("fisher_probe: probability must lie in (0,1)");
    if (!(step > 0.0) || !(v_max > v_min))
        throw std::invalid_argument("fisher_probe: bad grid");
    const auto count = static_cast<long>(std::floor((v_max - v_min) / step + 0.5));
    FisherProbe best;
    double best_risk = std::numeric_limits<double>::infinity();
    for (long i = 0; i <= count; ++i) {
        // integer stepping keeps v = 0 exactly on the grid
        const double v = v_min + static_cast<double>(i) * step;
        const double risk = prob_positive * baen_loss(1.0 - v, params)
            + (1.0 - prob_positive) * baen_loss(1.0 + v, params);
        if (risk < best_risk) {
            best_risk = risk;
            best.v_star = v;
        }
    }
    best.sign = best.v_star > 0.0 ? 1 : (best.v_star < 0.0 ? -1 : 0);
    return best;
}

std::vector<InfluenceStep> influence_probe(const Dataset& base, const Vector& direction,
                                           const std::vector<double>& magnitudes,
                                           const TrainConfig& config, double probe_label)
{
    if (magnitudes.size() < 2)
        throw std::invalid_argument("influence_probe: need at least two magnitudes");
    for (std::size_t i = 1; i < magnitudes.size(); ++i)
        if (!(magnitudes[i] > magnitudes[i - 1]))
            throw std::invalid_argument("influence_probe: magnitudes must strictly increase");
    if (direction.size() != base.features())
        throw std::invalid_argument("influence_probe: direction has wrong dimension");
    if (probe_label != 1.0 && probe_label != -1.0)
        throw std::invalid_argument("influence_probe: probe label must be +-1");

    const Eigen::Index n = base.rows();
    Matrix X(n + 1, base.features());
    X.topRows(n) = base.X;
    Vector y(n + 1);
    y.head(n) = base.y;
    y[n] = probe_label;

    std::vector<InfluenceStep> steps;
    for (double m : magnitudes) {
        X.row(n) = (m * direction).transpose();
        const Model model = fit(X, y, config);
        InfluenceStep s;
        s.magnitude = m;
        s.coefficients = expansion_coefficients(model).head(n);
        s.distance = steps.empty() ? 0.0 : (s.coefficients - steps.back().coefficients).norm();
        steps.push_back(std::move(s));
    }
    return steps;
}

Vector linear_normal(const Model& model)
{
    if (model.config.kernel.kind() != KernelKind::Linear)
        throw std::invalid_argument("boundary_angle: model does not use the linear kernel");
    Vector w = model.support_X.transpose() * expansion_coefficients(model);
    if (model.scaler)
        w = (w.array() / model.scaler->scale.array()).matrix();
    return w;
}

double boundary_angle(const Model& model, const Vector& bayes_normal)
{
    const Vector w = linear_normal(model);
    if (w.size() != bayes_normal.size())
        throw std::invalid_argument("boundary_angle: normal has wrong dimension");
    const double wn = w.norm();
    const double bn = bayes_normal.norm();
    if (!(wn > 0.0) || !(bn > 0.0))
        throw std::invalid_argument("boundary_angle: zero normal vector");
    const double c = std::min(1.0, std::abs(w.dot(bayes_normal)) / (wn * bn));
    return std::acos(c) * 180.0 / std::numbers::pi;
}

} // namespace baen
