#pragma once

#include "baen/data.hpp"
#include "baen/trainer.hpp"

#include <functional>
#include <string>
#include <vector>

namespace baen {

struct CvScore {
    double mean_acc = 0.0;
    double sd_acc = 0.0;
    double mean_f1 = 0.0;
    double sd_f1 = 0.0;
    std::vector<double> fold_acc;
    std::vector<double> fold_f1;
};

/// Optional hook applied to each fold's training portion (fold index passed),
/// e.g. train-only noise injection.
using FoldTransform = std::function<Dataset(const Dataset&, int)>;

/// Fits on k-1 folds and scores the held-out fold, for every fold. Features
/// are standardized per fold on the training portion when `standardize`.
/// Standard deviations are sample (n-1) deviations over folds.
CvScore cross_validate(const Dataset& ds, const TrainConfig& config, const SplitPlan& plan,
                       bool standardize = true, const FoldTransform& train_transform = {});

/// Candidate values per hyperparameter. Only the axes a preset leaves free
/// are expanded (sigma only for the RBF kernel).
struct GridSpec {
    std::vector<double> C;
    std::vector<double> eta;
    std::vector<double> tau;
    std::vector<double> p;
    std::vector<double> sigma;

    /// C = 2^-8..2^8, eta = 2^-6,2^-4..2^6, tau = {0,.1,.3,.6,1},
    /// p = {.3,.5,.7}, sigma = 2^-4..2^4.
    static GridSpec standard();
    void validate() const;
};

/// Expands the grid for a preset in nested order C, eta, tau, p, sigma.
std::vector<TrainConfig> expand_grid(const GridSpec& grid, const TrainConfig& base, const std::string& preset);

struct GridResult {
    TrainConfig best;
    CvScore score;
    long evaluations = 0;
    std::vector<CvScore> all;  // in expansion order
};

/// Exhaustive search; best = highest mean CV accuracy, ties to smaller C,
/// then earlier grid position. Configurations are evaluated in parallel.
GridResult grid_search(const Dataset& ds, const GridSpec& grid, const TrainConfig& base,
                       const std::string& preset, const SplitPlan& plan, bool standardize = true,
                       const FoldTransform& train_transform = {});

/// Serial reference for grid_search; identical result.
GridResult grid_search_serial(const Dataset& ds, const GridSpec& grid, const TrainConfig& base,
                              const std::string& preset, const SplitPlan& plan, bool standardize = true,
                              const FoldTransform& train_transform = {});

} // namespace baen
