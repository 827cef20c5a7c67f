#pragma once

#include <utility>

namespace baen {

/// Hyperparameters of the bounded asymmetric elastic net loss family.
///
/// `lambda` sets the upper bound 1/lambda, `eta` the steepness, `tau` the
/// weight of the negative branch and `p` the l2-vs-l1 trade-off.
class LossParams {
public:
    LossParams() = default;
    LossParams(double lambda, double eta, double tau, double p);

    double lambda() const { return lambda_; }
    double eta() const { return eta_; }
    double tau() const { return tau_; }
    double p() const { return p_; }

private:
    double lambda_ = 1.0;
    double eta_ = 1.0;
    double tau_ = 0.5;
    double p_ = 0.5;
};

/// Asymmetric elastic net loss. Nonnegative, zero at z = 0.
double aen_loss(double z, const LossParams& params);

/// Derivative of aen_loss for z != 0 (right branch at z = 0).
double aen_derivative(double z, const LossParams& params);

/// Bounded transform (1/lambda) * eta*L / (1 + eta*L), in [0, 1/lambda).
double baen_loss(double z, const LossParams& params);

/// Derivative of baen_loss. At exactly z = 0 the right limit eta(1-p)/lambda
/// is returned; use baen_subgradient_at_zero for the full subdifferential.
double baen_gradient(double z, const LossParams& params);

/// Subdifferential of baen_loss at z = 0: [-eta*tau*(1-p)/lambda, eta*(1-p)/lambda].
std::pair<double, double> baen_subgradient_at_zero(const LossParams& params);

/// Second derivative of baen_loss. Throws std::domain_error at z = 0, where
/// the function has a kink. Negative values mark the non-convex region.
double baen_second_derivative(double z, const LossParams& params);

} // namespace baen
