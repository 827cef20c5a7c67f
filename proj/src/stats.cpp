#include "baen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace baen {

RankTable rank_table(const Matrix& scores, std::vector<std::string> models, std::vector<std::string> datasets)
{
    const Eigen::Index N = scores.rows();
    const Eigen::Index k = scores.cols();
    if (N < 1 || k < 1)
        throw std::invalid_argument("rank_table: empty score table");
    RankTable t;
    t.scores = scores;
    t.models = std::move(models);
    t.datasets = std::move(datasets);
    t.ranks.resize(N, k);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    for (Eigen::Index r = 0; r < N; ++r) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return scores(r, a) > scores(r, b); });
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && scores(r, order[j + 1]) == scores(r, order[i]))
                ++j;
            // positions i..j (0-based) share rank ((i+1) + (j+1)) / 2
            const double avg = 0.5 * static_cast<double>(i + j + 2);
            for (std::size_t m = i; m <= j; ++m)
                t.ranks(r, order[m]) = avg;
            i = j + 1;
        }
    }
    t.average_ranks = t.ranks.colwise().mean().transpose();
    return t;
}

double friedman_ff(double chi2, int N, int k)
{
    const double full = static_cast<double>(N) * (k - 1);
    const double denom = full - chi2;
    if (std::abs(denom) <= 1e-12 * full)
        throw std::domain_error("friedman: F_F denominator N(k-1) - chi2 is zero");
    return (N - 1) * chi2 / denom;
}

FriedmanResult friedman_from_ranks(const Vector& average_ranks, int N)
{
    const auto k = static_cast<int>(average_ranks.size());
    if (k < 2 || N < 2)
        throw std::invalid_argument("friedman: need k >= 2 models and N >= 2 datasets");
    const double kk = k;
    FriedmanResult r;
    r.chi2 = 12.0 * N / (kk * (kk + 1.0)) * (average_ranks.squaredNorm() - kk * (kk + 1.0) * (kk + 1.0) / 4.0);
    try {
        r.ff = friedman_ff(r.chi2, N, k);
    } catch (const std::domain_error&) {
        r.ff.reset();
    }
    return r;
}

FriedmanResult friedman(const RankTable& table)
{
    return friedman_from_ranks(table.average_ranks, table.N());
}

double nemenyi_cd(int k, int N, double q_alpha)
{
    if (k < 2 || N < 1 || !(q_alpha > 0.0))
        throw std::invalid_argument("nemenyi_cd: need k >= 2, N >= 1, q_alpha > 0");
    return q_alpha * std::sqrt(static_cast<double>(k) * (k + 1) / (6.0 * N));
}

std::optional<double> nemenyi_q010(int k)
{
    if (k == 7)
        return 2.693;
    return std::nullopt;
}

} // namespace baen
