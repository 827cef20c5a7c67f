#include "baen/crossval.hpp"

#include "baen/metrics.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

namespace baen {

namespace {

double mean_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean)
{
    if (v.size() < 2)
        return 0.0;
    double s = 0.0;
    for (double x : v)
        s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<double> powers_of_two(int lo, int hi, int step)
{
    std::vector<double> out;
    for (int e = lo; e <= hi; e += step)
        out.push_back(std::ldexp(1.0, e));
    return out;
}

} // namespace

CvScore cross_validate(const Dataset& ds, const TrainConfig& config, const SplitPlan& plan, bool standardize,
                       const FoldTransform& train_transform)
{
    if (plan.fold.size() != static_cast<std::size_t>(ds.rows()))
        throw std::invalid_argument("cross_validate: split plan does not match dataset");
    CvScore score;
    for (int f = 0; f < plan.k; ++f) {
        Dataset train = ds.subset(plan.train_rows(f));
        if (train_transform)
            train = train_transform(train, f);
        const Dataset test = ds.subset(plan.test_rows(f));
        if (test.rows() == 0)
            throw DataError("cross_validate: fold " + std::to_string(f) + " is empty");
        if ((train.y.array() > 0).all() || (train.y.array() < 0).all())
            throw DataError("cross_validate: training portion of fold " + std::to_string(f)
                            + " has a single class");
        const Model model = standardize ? fit_standardized(train.X, train.y, config)
                                        : fit(train.X, train.y, config);
        const Scores s = metrics(test.y, predict(model, test.X));
        score.fold_acc.push_back(s.acc);
        score.fold_f1.push_back(s.f1);
    }
    score.mean_acc = mean_of(score.fold_acc);
    score.sd_acc = sd_of(score.fold_acc, score.mean_acc);
    score.mean_f1 = mean_of(score.fold_f1);
    score.sd_f1 = sd_of(score.fold_f1, score.mean_f1);
    return score;
}

GridSpec GridSpec::standard()
{
    GridSpec g;
    g.C = powers_of_two(-8, 8, 1);
    g.eta = powers_of_two(-6, 6, 2);
    g.tau = {0.0, 0.1, 0.3, 0.6, 1.0};
    g.p = {0.3, 0.5, 0.7};
    g.sigma = powers_of_two(-4, 4, 1);
    return g;
}

void GridSpec::validate() const
{
    if (C.empty() || eta.empty() || tau.empty() || p.empty() || sigma.empty())
        throw std::invalid_argument("grid: every candidate set must be non-empty");
    for (double v : C)
        if (!(v > 0.0))
            throw std::invalid_argument("grid: C values must be positive");
    for (double v : eta)
        if (!(v > 0.0))
            throw std::invalid_argument("grid: eta values must be positive");
    for (double v : tau)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("grid: tau values must lie in [0,1]");
    for (double v : p)
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument("grid: p values must lie in (0,1]");
    for (double v : sigma)
        if (!(v > 0.0))
            throw std::invalid_argument("grid: sigma values must be positive");
}

std::vector<TrainConfig> expand_grid(const GridSpec& grid, const TrainConfig& base, const std::string& preset)
{
    grid.validate();
    const bool free_eta = preset == "baen" || preset == "bals-like" || preset == "bq-approx";
    const bool free_tau = preset == "baen" || preset == "aen" || preset == "bq-approx";
    const bool free_p = preset == "baen" || preset == "aen" || preset == "en";
    const bool rbf = base.kernel.kind() == KernelKind::Rbf;
    // validates the preset name
    const TrainConfig pinned = apply_preset(base, preset);

    const std::vector<double> keep_eta{pinned.loss.eta()};
    const std::vector<double> keep_tau{pinned.loss.tau()};
    const std::vector<double> keep_p{pinned.loss.p()};
    const std::vector<double> keep_sigma{pinned.kernel.sigma()};

    std::vector<TrainConfig> out;
    for (double C : grid.C)
        for (double eta : free_eta ? grid.eta : keep_eta)
            for (double tau : free_tau ? grid.tau : keep_tau)
                for (double p : free_p ? grid.p : keep_p)
                    for (double sigma : rbf ? grid.sigma : keep_sigma) {
                        TrainConfig cfg = base;
                        cfg.C = C;
                        cfg.loss = LossParams(base.loss.lambda(), eta, tau, p);
                        if (rbf)
                            cfg.kernel = KernelSpec::rbf(sigma);
                        out.push_back(apply_preset(cfg, preset));
                    }
    return out;
}

namespace {

GridResult select_best(std::vector<TrainConfig> configs, std::vector<CvScore> scores)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < configs.size(); ++i) {
        const double a = scores[i].mean_acc;
        const double b = scores[best].mean_acc;
        if (a > b || (a == b && configs[i].C < configs[best].C))
            best = i;
    }
    GridResult r;
    r.best = configs[best];
    r.score = scores[best];
    r.evaluations = static_cast<long>(configs.size());
    r.all = std::move(scores);
    return r;
}

} // namespace

GridResult grid_search(const Dataset& ds, const GridSpec& grid, const TrainConfig& base,
                       const std::string& preset, const SplitPlan& plan, bool standardize,
                       const FoldTransform& train_transform)
{
    std::vector<TrainConfig> configs = expand_grid(grid, base, preset);
    std::vector<CvScore> scores(configs.size());
    const auto count = static_cast<long>(configs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            scores[static_cast<std::size_t>(i)] = cross_validate(ds, configs[static_cast<std::size_t>(i)], plan, standardize,
                                                                   train_transform);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return select_best(std::move(configs), std::move(scores));
}

GridResult grid_search_serial(const Dataset& ds, const GridSpec& grid, const TrainConfig& base,
                              const std::string& preset, const SplitPlan& plan, bool standardize,
                       const FoldTransform& train_transform)
{
    std::vector<TrainConfig> configs = expand_grid(grid, base, preset);
    std::vector<CvScore> scores;
    scores.reserve(configs.size());
    for (const TrainConfig& cfg : configs)
        scores.push_back(cross_validate(ds, cfg, plan, standardize, train_transform));
    return select_best(std::move(configs), std::move(scores));
}

} // namespace baen
