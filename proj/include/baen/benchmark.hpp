#pragma once

#include "baen/crossval.hpp"
#include "baen/stats.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace baen {

struct NoiseSetting {
    std::string kind = "none";  // none | label | feature
    double level = 0.0;
};

struct BenchmarkOptions {
    std::vector<std::string> presets;
    std::vector<NoiseSetting> noise{NoiseSetting{}};
    GridSpec grid = GridSpec::standard();
    TrainConfig base;
    int folds = 5;
    std::uint64_t seed = 0;
    bool standardize = true;
    /// true: inject noise into every row before splitting; false: only into
    /// each fold's training portion.
    bool noise_all_samples = true;
    std::optional<double> q_alpha;
};

struct BenchmarkCell {
    std::string dataset;
    std::string preset;
    NoiseSetting noise;
    CvScore score;
    TrainConfig selected;
};

struct StatsBlock {
    std::string metric;  // acc | f1
    NoiseSetting noise;
    RankTable ranks;
    std::optional<FriedmanResult> friedman;
    std::optional<double> cd;
    std::string notice;
};

struct BenchmarkReport {
    std::vector<BenchmarkCell> cells;
    std::vector<StatsBlock> stats;
};

/// Grid search plus k-fold CV for every dataset x noise setting x preset,
/// followed by Friedman/Nemenyi statistics per metric and noise setting.
BenchmarkReport run_benchmark(const std::vector<Dataset>& datasets, const BenchmarkOptions& options);

/// dataset,preset,noise_kind,noise_level,mean_acc,sd_acc,mean_f1,sd_f1
void write_report_csv(std::ostream& out, const BenchmarkReport& report);
/// dataset,preset,noise_kind,noise_level,C,eta,tau,p,kernel,sigma
void write_selection_csv(std::ostream& out, const BenchmarkReport& report);
/// metric,noise,k,N,chi2_F,F_F,CD followed by per-model average ranks.
void write_stats_block(std::ostream& out, const BenchmarkReport& report);

std::string noise_label(const NoiseSetting& noise);

} // namespace baen
