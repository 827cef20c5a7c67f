#pragma once

#include "baen/kernel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace baen {

/// Scores of k models on N datasets with per-dataset ranks (higher score
/// ranks first, tied groups share their average rank).
struct RankTable {
    std::vector<std::string> models;
    std::vector<std::string> datasets;
    Matrix scores;  // N x k
    Matrix ranks;   // N x k
    Vector average_ranks;

    int k() const { return static_cast<int>(scores.cols()); }
    int N() const { return static_cast<int>(scores.rows()); }
};

RankTable rank_table(const Matrix& scores, std::vector<std::string> models = {},
                     std::vector<std::string> datasets = {});

struct FriedmanResult {
    double chi2 = 0.0;
    /// Empty when N(k-1) - chi2_F vanishes (one model wins every dataset).
    std::optional<double> ff;
};

/// chi2_F = 12N/(k(k+1)) (sum R_j^2 - k(k+1)^2/4),
/// F_F = (N-1) chi2_F / (N(k-1) - chi2_F).
FriedmanResult friedman(const RankTable& table);
FriedmanResult friedman_from_ranks(const Vector& average_ranks, int N);
/// Throws std::domain_error when N(k-1) == chi2 (to rounding).
double friedman_ff(double chi2, int N, int k);

/// q_alpha * sqrt(k(k+1)/(6N)).
double nemenyi_cd(int k, int N, double q_alpha);

/// Built-in Nemenyi q at alpha = 0.1. Only k = 7 is tabulated.
std::optional<double> nemenyi_q010(int k);

} // namespace baen
