#include "baen/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace baen {

LossParams::LossParams(double lambda, double eta, double tau, double p)
    : lambda_(lambda), eta_(eta), tau_(tau), p_(p)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("loss: lambda must be positive, got " + std::to_string(lambda));
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw std::invalid_argument("loss: eta must be positive, got " + std::to_string(eta));
    if (!(tau >= 0.0 && tau <= 1.0))
        throw std::invalid_argument("loss: tau must lie in [0,1], got " + std::to_string(tau));
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("loss: p must lie in [0,1], got " + std::to_string(p));
}

double aen_loss(double z, const LossParams& params)
{
    const double p = params.p();
    if (z >= 0.0)
        return 0.5 * p * z * z + (1.0 - p) * z;
    const double tau = params.tau();
    return tau * (0.5 * p * tau * z * z - (1.0 - p) * z);
}

double aen_derivative(double z, const LossParams& params)
{
    const double p = params.p();
    if (z >= 0.0)
        return p * z + (1.0 - p);
    const double tau = params.tau();
    return tau * (p * tau * z - (1.0 - p));
}

double baen_loss(double z, const LossParams& params)
{
    // eta*L/(1+eta*L) rather than 1 - 1/(1+eta*L): no cancellation for small eta*L.
    const double s = params.eta() * aen_loss(z, params);
    return s / (1.0 + s) / params.lambda();
}

double baen_gradient(double z, const LossParams& params)
{
    const double eta = params.eta();
    const double denom = 1.0 + eta * aen_loss(z, params);
    return eta * aen_derivative(z, params) / (params.lambda() * denom * denom);
}

std::pair<double, double> baen_subgradient_at_zero(const LossParams& params)
{
    const double scale = params.eta() * (1.0 - params.p()) / params.lambda();
    return {-params.tau() * scale, scale};
}

double baen_second_derivative(double z, const LossParams& params)
{
    if (z == 0.0)
        throw std::domain_error("baen_second_derivative: undefined at z = 0");
    const double eta = params.eta();
    const double p = params.p();
    const double tau = params.tau();
    const double curvature = z > 0.0 ? p : p * tau * tau;
    const double slope = aen_derivative(z, params);
    const double denom = 1.0 + eta * aen_loss(z, params);
    return (eta * curvature * denom - 2.0 * eta * eta * slope * slope)
        / (params.lambda() * denom * denom * denom);
}

} // namespace baen
