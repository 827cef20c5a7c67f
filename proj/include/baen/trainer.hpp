#pragma once

#include "baen/kernel.hpp"
#include "baen/loss.hpp"
#include "baen/qp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace baen {

struct TrainConfig {
    double C = 1.0;
    /// lambda stays 1 for bounded fits: the bound is absorbed into C.
    LossParams loss{1.0, 1.0, 0.5, 0.5};
    KernelSpec kernel;
    double hq_tol = 1e-4;
    int hq_max_iters = 50;
    SolverConfig solver;
    /// false: single weighted solve with the unbounded AEN loss.
    bool bounded = true;
    std::string preset = "baen";

    void validate() const;
};

/// Known presets: baen, aen, en, bals-like, bq-approx.
const std::vector<std::string>& preset_names();

/// Overrides the fields a preset pins and keeps the rest of `base`.
/// Throws std::invalid_argument for an unknown name.
TrainConfig apply_preset(TrainConfig base, const std::string& name);

/// Zero-mean, unit-variance scaling fitted on training rows. Constant
/// columns keep scale 1.
struct Standardizer {
    Vector mean;
    Vector scale;

    static Standardizer fit(const Matrix& X);
    Matrix apply(const Matrix& X) const;
    Vector apply(const Vector& x) const;
};

struct FitDiagnostics {
    int hq_iterations = 0;
    bool hq_converged = false;
    /// ||u^{s+1} - u^s|| of the last outer iteration.
    double last_step = 0.0;
    double kkt = 0.0;
    long inner_iterations = 0;
    bool inner_cap_hit = false;
    double max_drift = 0.0;
    /// Primal objective after each outer iteration.
    std::vector<double> objective_trace;
    /// min and max of delta used at each outer iteration.
    std::vector<std::pair<double, double>> delta_range;
};

struct Model {
    Matrix support_X;  // training rows, after scaling when `scaler` is set
    Vector y;
    Vector alpha;
    Vector beta;       // all zero when tau = 0
    TrainConfig config;
    FitDiagnostics diagnostics;
    std::optional<Standardizer> scaler;
    /// Full dual iterate, kept for continuing the outer loop.
    Vector dual;

    Eigen::Index samples() const { return support_X.rows(); }
    Eigen::Index features() const { return support_X.cols(); }
};

/// -1 / (1 + eta * L_aen(z))^2, in [-1, 0).
double update_delta(double z, double eta, const LossParams& aen_params);

/// omega_i = C * eta * (-delta_i). Throws if any delta_i lies outside [-1, 0).
Vector weights_from_delta(const Vector& delta, double C, double eta);

/// Half-quadratic fit (bounded) or single weighted solve (unbounded).
/// Throws std::invalid_argument for bad shapes, labels or a single class.
Model fit(const Matrix& X, const Vector& y, const TrainConfig& config);

/// Standardizes X first and stores the scaler in the model.
Model fit_standardized(const Matrix& X, const Vector& y, const TrainConfig& config);

/// Runs up to `extra_iters` more outer iterations from the model's state.
Model fit_continue(const Model& model, int extra_iters);

double decision_value(const Model& model, const Vector& x);
Vector decision_values(const Model& model, const Matrix& X);
Vector decision_values_serial(const Model& model, const Matrix& X);

/// +1 where f >= 0, -1 otherwise.
Vector predict(const Model& model, const Matrix& X);

Vector slacks(const Model& model, const Matrix& X, const Vector& y);

/// 0.5 ||w~||^2 + C sum L(1 - y_i f_i) with L = L_baen(lambda=1) for bounded
/// models and L_aen otherwise. X, y are the raw training data.
double primal_objective(const Model& model, const Matrix& X, const Vector& y);

/// Decision-function coefficients y_i (alpha_i - beta_i).
Vector expansion_coefficients(const Model& model);

} // namespace baen
