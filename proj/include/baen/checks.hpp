#pragma once

#include "baen/data.hpp"
#include "baen/trainer.hpp"

#include <string>
#include <vector>

namespace baen {

struct VtubPair {
    int i = 0;
    int j = 0;
    double slack_gap = 0.0;  // |xi_i - xi_j|
    double distance = 0.0;   // d_ij
    double bound = 0.0;
    bool satisfied = false;
};

struct VtubReport {
    bool hypothesis_met = true;
    std::string note;
    double theta_min = 0.0;   // smallest eigenvalue of Xt' Xt
    double theta_max = 0.0;   // largest eigenvalue of Xt' Xt
    double frobenius = 0.0;   // ||Xt||_F
    std::vector<VtubPair> pairs;
    double satisfaction_rate = 1.0;
};

/// Slack threshold above which a sample counts as violating its constraint.
inline constexpr double kViolationTol = 1e-9;

/// Violation-tolerance upper bound diagnostic. For every same-class pair
/// whose slacks are both positive, reports |xi_i - xi_j| against
///   p (theta_1 + p theta_n) sqrt(n) ||Xt||_F d_ij.
/// Linear kernel: Xt = (X, e), d_ij = ||x_i - x_j||. Other kernels:
/// Xt = (K, e) with K the base kernel matrix and d_ij the distance between
/// rows of K. X is the fitting-space training matrix kept in the model; `ds`
/// supplies the raw rows for the slacks. Outside p in (0,1) or tau = 0 the
/// report is marked as not meeting the hypothesis but still filled in.
VtubReport vtub_check(const Model& model, const Dataset& ds);

struct FisherProbe {
    double v_star = 0.0;
    int sign = 0;
};

/// Grid minimizer of P L(1 - v) + (1 - P) L(1 + v) over [v_min, v_max].
FisherProbe fisher_probe(const LossParams& params, double prob_positive, double v_min = -5.0,
                         double v_max = 5.0, double step = 1e-3);

struct InfluenceStep {
    double magnitude = 0.0;
    Vector coefficients;  // y_i (alpha_i - beta_i) over the base samples
    double distance = 0.0;  // to the previous step; 0 for the first
};

/// Refits with one extra point at magnitude * direction labelled
/// `probe_label`, for each magnitude. Magnitudes must strictly increase.
std::vector<InfluenceStep> influence_probe(const Dataset& base, const Vector& direction,
                                           const std::vector<double>& magnitudes,
                                           const TrainConfig& config, double probe_label = -1.0);

/// Angle in degrees, in [0, 90], between the normal of a linear-kernel model
/// (mapped back to raw feature space) and `bayes_normal`.
double boundary_angle(const Model& model, const Vector& bayes_normal);

/// Linear-kernel normal w = sum_i y_i (alpha_i - beta_i) x_i in raw feature space.
Vector linear_normal(const Model& model);

} // namespace baen
