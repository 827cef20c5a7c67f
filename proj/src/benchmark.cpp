#include "baen/benchmark.hpp"

#include "baen/data.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace baen {

namespace {

std::string fixed(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string general(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t noise_seed(std::uint64_t seed, std::size_t dataset, std::size_t setting)
{
    return seed + 1000003ULL * (dataset + 1) + 7919ULL * (setting + 1);
}

Dataset apply_noise(const Dataset& ds, const NoiseSetting& noise, std::uint64_t seed)
{
    if (noise.kind == "label")
        return inject_label_noise(ds, noise.level, seed);
    if (noise.kind == "feature")
        return inject_feature_noise(ds, noise.level, seed);
    return ds;
}

} // namespace

std::string noise_label(const NoiseSetting& noise)
{
    if (noise.kind == "none")
        return "none";
    return noise.kind + ":" + fixed(noise.level, 2);
}

BenchmarkReport run_benchmark(const std::vector<Dataset>& datasets, const BenchmarkOptions& options)
{
    if (datasets.empty())
        throw std::invalid_argument("benchmark: no datasets");
    if (options.presets.empty())
        throw std::invalid_argument("benchmark: no presets");
    for (const NoiseSetting& n : options.noise)
        if (n.kind != "none" && n.kind != "label" && n.kind != "feature")
            throw std::invalid_argument("benchmark: unknown noise kind '" + n.kind + "'");

    BenchmarkReport report;
    for (std::size_t s = 0; s < options.noise.size(); ++s) {
        const NoiseSetting& noise = options.noise[s];
        for (std::size_t d = 0; d < datasets.size(); ++d) {
            const Dataset& clean = datasets[d];
            clean.validate();
            const std::uint64_t nseed = noise_seed(options.seed, d, s);
            const Dataset data = options.noise_all_samples ? apply_noise(clean, noise, nseed) : clean;
            const SplitPlan plan = stratified_kfold(data, options.folds, options.seed);
            FoldTransform transform;
            if (!options.noise_all_samples && noise.kind != "none")
                transform = [&noise, nseed](const Dataset& train, int fold) {
                    return apply_noise(train, noise, nseed + static_cast<std::uint64_t>(fold));
                };
            for (const std::string& preset : options.presets) {
                const GridResult g = grid_search(data, options.grid, options.base, preset, plan,
                                                 options.standardize, transform);
                report.cells.push_back({clean.name, preset, noise, g.score, g.best});
            }
        }

        for (const std::string metric : {"acc", "f1"}) {
            const auto N = static_cast<Eigen::Index>(datasets.size());
            const auto k = static_cast<Eigen::Index>(options.presets.size());
            Matrix scores(N, k);
            std::vector<std::string> names;
            // cells of this setting, in dataset-major then preset order
            const std::size_t first = report.cells.size() - static_cast<std::size_t>(N * k);
            for (Eigen::Index d = 0; d < N; ++d) {
                names.push_back(datasets[static_cast<std::size_t>(d)].name);
                for (Eigen::Index m = 0; m < k; ++m) {
                    const CvScore& sc = report.cells[first + static_cast<std::size_t>(d * k + m)].score;
                    scores(d, m) = metric == "acc" ? sc.mean_acc : sc.mean_f1;
                }
            }
            StatsBlock block;
            block.metric = metric;
            block.noise = noise;
            block.ranks = rank_table(scores, options.presets, names);
            if (k < 2 || N < 2) {
                block.notice = "statistics skipped: need k >= 2 presets and N >= 2 datasets";
            } else {
                block.friedman = friedman(block.ranks);
                if (!block.friedman->ff)
                    block.notice = "F_F undefined: one preset ranks first on every dataset";
                const std::optional<double> q = options.q_alpha ? options.q_alpha : nemenyi_q010(static_cast<int>(k));
                if (q)
                    block.cd = nemenyi_cd(static_cast<int>(k), static_cast<int>(N), *q);
                else if (block.notice.empty())
                    block.notice = "CD not computed: no q_alpha for k = " + std::to_string(k);
            }
            report.stats.push_back(std::move(block));
        }
    }
    return report;
}

void write_report_csv(std::ostream& out, const BenchmarkReport& report)
{
    out << "dataset,preset,noise_kind,noise_level,mean_acc,sd_acc,mean_f1,sd_f1\n";
    for (const BenchmarkCell& c : report.cells) {
        out << c.dataset << ',' << c.preset << ',' << c.noise.kind << ',' << fixed(c.noise.level, 2) << ','
            << fixed(c.score.mean_acc) << ',' << fixed(c.score.sd_acc) << ','
            << fixed(c.score.mean_f1) << ',' << fixed(c.score.sd_f1) << '\n';
    }
}

void write_selection_csv(std::ostream& out, const BenchmarkReport& report)
{
    out << "dataset,preset,noise_kind,noise_level,C,eta,tau,p,kernel,sigma\n";
    for (const BenchmarkCell& c : report.cells) {
        const TrainConfig& s = c.selected;
        out << c.dataset << ',' << c.preset << ',' << c.noise.kind << ',' << fixed(c.noise.level, 2) << ','
            << general(s.C) << ',' << general(s.loss.eta()) << ',' << general(s.loss.tau()) << ','
            << general(s.loss.p()) << ',' << s.kernel.name() << ',' << general(s.kernel.sigma()) << '\n';
    }
}

void write_stats_block(std::ostream& out, const BenchmarkReport& report)
{
    out << "metric,noise,k,N,chi2_F,F_F,CD\n";
    for (const StatsBlock& b : report.stats) {
        out << b.metric << ',' << noise_label(b.noise) << ',' << b.ranks.k() << ',' << b.ranks.N() << ','
            << (b.friedman ? fixed(b.friedman->chi2, 2) : "NA") << ','
            << (b.friedman && b.friedman->ff ? fixed(*b.friedman->ff, 2) : "NA") << ','
            << (b.cd ? fixed(*b.cd, 2) : "NA") << '\n';
    }
    out << "\nmetric,noise,preset,average_rank\n";
    for (const StatsBlock& b : report.stats)
        for (int m = 0; m < b.ranks.k(); ++m)
            out << b.metric << ',' << noise_label(b.noise) << ','
                << (static_cast<std::size_t>(m) < b.ranks.models.size() ? b.ranks.models[static_cast<std::size_t>(m)] : std::to_string(m))
                << ',' << fixed(b.ranks.average_ranks[m], 4) << '\n';
    for (const StatsBlock& b : report.stats)
        if (!b.notice.empty())
            out << "# " << b.metric << ' ' << noise_label(b.noise) << ": " << b.notice << '\n';
}

} // namespace baen
