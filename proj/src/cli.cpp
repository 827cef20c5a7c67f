#include "baen/cli.hpp"

#include "baen/benchmark.hpp"
#include "baen/checks.hpp"
#include "baen/crossval.hpp"
#include "baen/data.hpp"
#include "baen/metrics.hpp"
#include "baen/model_io.hpp"
#include "baen/stats.hpp"
#include "baen/trainer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace baen::cli {

namespace {

using json = nlohmann::json;

/// Raised when an asserted checker property fails.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigFlags {
    std::string preset = "baen";
    double C = 1.0;
    double eta = 1.0;
    double tau = 0.5;
    double p = 0.5;
    std::string kernel = "linear";
    double sigma = 1.0;
    double hq_tol = 1e-4;
    int hq_max_iters = 50;
    double inner_tol = 1e-8;
    long max_inner_iters = 0;

    void attach(CLI::App& app)
    {
        app.add_option("--preset", preset, "baen | aen | en | bals-like | bq-approx")->capture_default_str();
        app.add_option("--C", C, "regularization trade-off")->capture_default_str();
        app.add_option("--eta", eta, "loss steepness")->capture_default_str();
        app.add_option("--tau", tau, "asymmetry weight")->capture_default_str();
        app.add_option("--p", p, "l2/l1 trade-off")->capture_default_str();
        app.add_option("--kernel", kernel, "linear | rbf")->capture_default_str();
        app.add_option("--sigma", sigma, "RBF width")->capture_default_str();
        app.add_option("--hq-tol", hq_tol, "outer stopping tolerance")->capture_default_str();
        app.add_option("--hq-max-iters", hq_max_iters, "outer iteration cap")->capture_default_str();
        app.add_option("--inner-tol", inner_tol, "clipDCD gain tolerance")->capture_default_str();
        app.add_option("--max-inner-iters", max_inner_iters, "clipDCD cap (0 = 5000*dim)")->capture_default_str();
    }

    TrainConfig build() const
    {
        TrainConfig cfg;
        cfg.C = C;
        cfg.loss = LossParams(1.0, eta, tau, p);
        cfg.kernel = KernelSpec::parse(kernel, sigma);
        cfg.hq_tol = hq_tol;
        cfg.hq_max_iters = hq_max_iters;
        cfg.solver.inner_tol = inner_tol;
        cfg.solver.max_inner_iters = max_inner_iters;
        cfg = apply_preset(cfg, preset);
        cfg.validate();
        return cfg;
    }
};

json config_json(const TrainConfig& c)
{
    return json{{"preset", c.preset}, {"bounded", c.bounded}, {"C", c.C},
                {"eta", c.loss.eta()}, {"tau", c.loss.tau()}, {"p", c.loss.p()},
                {"kernel", c.kernel.name()}, {"sigma", c.kernel.sigma()},
                {"hq_tol", c.hq_tol}, {"hq_max_iters", c.hq_max_iters},
                {"inner_tol", c.solver.inner_tol}, {"max_inner_iters", c.solver.max_inner_iters}};
}

std::string timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

void write_manifest(const std::string& path, const std::string& command, const std::vector<std::string>& args,
                    json extra)
{
    json m{{"command", command}, {"argv", args}, {"created", timestamp()}};
    for (auto& [key, value] : extra.items())
        m[key] = value;
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write manifest '" + path + "'");
    out << m.dump(2) << '\n';
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse list value '" + cell + "'");
        }
        if (used != cell.size())
            throw std::invalid_argument("cannot parse list value '" + cell + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

Vector to_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string fmt(double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
    int n = 75;
    std::string mu_plus = "3,3";
    std::string mu_minus = "-3,-3";
    bool case1 = false;
    bool case2 = false;
    int outliers_neg = 0;
    int outliers_pos = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_synth(const SynthArgs& a, const std::vector<std::string>& argv, std::ostream& out)
{
    GaussianPair means;
    means.mu_plus = to_vector(parse_list(a.mu_plus));
    means.mu_minus = to_vector(parse_list(a.mu_minus));
    Dataset ds = make_gaussian_twoclass(a.n, means.mu_plus, means.mu_minus, a.seed);
    std::map<int, int> counts;
    if (a.case1 || a.case2)
        counts[-1] = 3;
    if (a.case2)
        counts[1] = 3;
    if (a.outliers_neg > 0)
        counts[-1] = a.outliers_neg;
    if (a.outliers_pos > 0)
        counts[1] = a.outliers_pos;
    ds = inject_outliers(ds, counts, a.seed + 1, means);
    ds.name = std::filesystem::path(a.out).stem().string();
    save_csv(a.out, ds);
    write_manifest(a.out + ".manifest.json", "synth", argv,
                   {{"outputs", {a.out}}, {"seed", a.seed}, {"n_per_class", a.n},
                    {"mu_plus", a.mu_plus}, {"mu_minus", a.mu_minus},
                    {"outliers", {{"neg", counts.count(-1) ? counts[-1] : 0}, {"pos", counts.count(1) ? counts[1] : 0}}}});
    out << "wrote " << ds.rows() << " rows to " << a.out << '\n';
    return kOk;
}

// ---------------------------------------------------------------- noise

struct NoiseArgs {
    std::string in;
    std::string out;
    std::string label_column;
    double label_noise = 0.0;
    double feature_ratio = 0.0;
    std::uint64_t seed = 0;
};

int cmd_noise(const NoiseArgs& a, const std::vector<std::string>& argv, std::ostream& out)
{
    Dataset ds = load_csv(a.in, a.label_column);
    ds = inject_label_noise(ds, a.label_noise, a.seed);
    ds = inject_feature_noise(ds, a.feature_ratio, a.seed + 1);
    save_csv(a.out, ds);
    write_manifest(a.out + ".manifest.json", "noise", argv,
                   {{"inputs", {a.in}}, {"outputs", {a.out}}, {"seed", a.seed},
                    {"label_noise", a.label_noise}, {"feature_noise_ratio", a.feature_ratio}});
    out << "wrote " << ds.rows() << " rows to " << a.out << '\n';
    return kOk;
}

// ---------------------------------------------------------------- train / predict

struct TrainArgs {
    std::string data;
    std::string label_column;
    std::string model;
    bool no_standardize = false;
    ConfigFlags config;
};

int cmd_train(const TrainArgs& a, const std::vector<std::string>& argv, std::ostream& out)
{
    const Dataset ds = load_csv(a.data, a.label_column);
    ds.validate();
    const TrainConfig cfg = a.config.build();
    const Model model = a.no_standardize ? fit(ds.X, ds.y, cfg) : fit_standardized(ds.X, ds.y, cfg);
    save_model(a.model, model);

    const Scores s = metrics(ds.y, predict(model, ds.X));
    const FitDiagnostics& d = model.diagnostics;
    std::ostringstream diag;
    diag << "preset " << cfg.preset << '\n'
         << "hq_iterations " << d.hq_iterations << '\n'
         << "hq_converged " << (d.hq_converged ? 1 : 0) << '\n'
         << "last_step " << fmt(d.last_step, 10) << '\n'
         << "kkt_residual " << fmt(d.kkt, 10) << '\n'
         << "inner_iterations " << d.inner_iterations << '\n'
         << "inner_cap_hit " << (d.inner_cap_hit ? 1 : 0) << '\n'
         << "training_accuracy " << fmt(s.acc, 10) << '\n'
         << "objective_trace";
    for (double v : d.objective_trace)
        diag << ' ' << fmt(v, 12);
    diag << '\n';
    std::ofstream(a.model + ".diagnostics.txt") << diag.str();
    write_manifest(a.model + ".manifest.json", "train", argv,
                   {{"inputs", {a.data}}, {"outputs", {a.model, a.model + ".diagnostics.txt"}},
                    {"preset", cfg.preset}, {"config", config_json(cfg)}, {"standardize", !a.no_standardize}});
    out << diag.str();
    return kOk;
}

struct PredictArgs {
    std::string model;
    std::string data;
    std::string label_column;
    std::string out;
    bool no_labels = false;
};

int cmd_predict(const PredictArgs& a, const std::vector<std::string>& argv, std::ostream& out)
{
    const Model model = load_model(a.model);
    Matrix X;
    std::optional<Vector> y;
    if (a.no_labels) {
        X = load_csv_features(a.data);
    } else {
        const Dataset ds = load_csv(a.data, a.label_column);
        X = ds.X;
        y = ds.y;
    }
    if (X.cols() != model.features())
        throw DataError("model expects " + std::to_string(model.features()) + " features, found "
                        + std::to_string(X.cols()) + " in '" + a.data + "'");
    const Vector f = decision_values(model, X);
    std::ofstream o(a.out);
    if (!o)
        throw DataError("cannot write '" + a.out + "'");
    o << "decision,label\n";
    char buf[40];
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", f[i]);
        o << buf << ',' << (f[i] >= 0.0 ? 1 : -1) << '\n';
    }
    write_manifest(a.out + ".manifest.json", "predict", argv, {{"inputs", {a.model, a.data}}, {"outputs", {a.out}}});
    out << "wrote " << f.size() << " predictions to " << a.out << '\n';
    if (y) {
        const Vector pred = f.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
        const Scores s = metrics(*y, pred);
        out << "accuracy " << fmt(s.acc, 10) << "\nf1 " << fmt(s.f1, 10) << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- cv

struct CvArgs {
    std::string data;
    std::string label_column;
    int folds = 5;
    std::uint64_t seed = 0;
    bool no_standardize = false;
    ConfigFlags config;
};

int cmd_cv(const CvArgs& a, std::ostream& out)
{
    const Dataset ds = load_csv(a.data, a.label_column);
    ds.validate();
    const SplitPlan plan = stratified_kfold(ds, a.folds, a.seed);
    const CvScore s = cross_validate(ds, a.config.build(), plan, !a.no_standardize);
    out << "mean_acc " << fmt(s.mean_acc) << "\nsd_acc " << fmt(s.sd_acc) << "\nmean_f1 " << fmt(s.mean_f1)
        << "\nsd_f1 " << fmt(s.sd_f1) << '\n';
    return kOk;
}

// ---------------------------------------------------------------- benchmark

struct BenchArgs {
    std::vector<std::string> data;
    std::string label_column;
    std::vector<std::string> presets{"baen", "en"};
    double label_noise = -1.0;
    double feature_ratio = -1.0;
    bool skip_clean = false;
    bool noise_train_only = false;
    int folds = 5;
    std::uint64_t seed = 0;
    std::string grid = "standard";
    std::string grid_C, grid_eta, grid_tau, grid_p, grid_sigma;
    double q_alpha = 0.0;
    bool no_standardize = false;
    std::string out_dir = ".";
    ConfigFlags config;
};

GridSpec small_grid()
{
    GridSpec g;
    g.C = {0.25, 1.0, 4.0};
    g.eta = {0.25, 1.0, 4.0};
    g.tau = {0.0, 0.3, 1.0};
    g.p = {0.3, 0.7};
    g.sigma = {0.25, 1.0, 4.0};
    return g;
}

int cmd_benchmark(const BenchArgs& a, const std::vector<std::string>& argv, std::ostream& out)
{
    std::vector<Dataset> datasets;
    for (const std::string& path : a.data) {
        Dataset ds = load_csv(path, a.label_column);
        ds.name = std::filesystem::path(path).stem().string();
        ds.validate();
        datasets.push_back(std::move(ds));
    }

    BenchmarkOptions opt;
    opt.presets = a.presets;
    opt.noise.clear();
    if (!a.skip_clean)
        opt.noise.push_back({"none", 0.0});
    if (a.label_noise >= 0.0)
        opt.noise.push_back({"label", a.label_noise});
    if (a.feature_ratio >= 0.0)
        opt.noise.push_back({"feature", a.feature_ratio});
    if (opt.noise.empty())
        throw std::invalid_argument("benchmark: no noise settings selected");
    if (a.grid == "standard")
        opt.grid = GridSpec::standard();
    else if (a.grid == "small")
        opt.grid = small_grid();
    else
        throw std::invalid_argument("benchmark: --grid must be standard or small");
    if (!a.grid_C.empty()) opt.grid.C = parse_list(a.grid_C);
    if (!a.grid_eta.empty()) opt.grid.eta = parse_list(a.grid_eta);
    if (!a.grid_tau.empty()) opt.grid.tau = parse_list(a.grid_tau);
    if (!a.grid_p.empty()) opt.grid.p = parse_list(a.grid_p);
    if (!a.grid_sigma.empty()) opt.grid.sigma = parse_list(a.grid_sigma);
    opt.base = a.config.build();
    opt.folds = a.folds;
    opt.seed = a.seed;
    opt.standardize = !a.no_standardize;
    opt.noise_all_samples = !a.noise_train_only;
    if (a.q_alpha > 0.0)
        opt.q_alpha = a.q_alpha;

    const BenchmarkReport report = run_benchmark(datasets, opt);

    std::filesystem::create_directories(a.out_dir);
    const auto dir = std::filesystem::path(a.out_dir);
    const std::string report_path = (dir / "report.csv").string();
    const std::string stats_path = (dir / "stats.txt").string();
    const std::string sel_path = (dir / "selected.csv").string();
    {
        std::ofstream o(report_path);
        write_report_csv(o, report);
    }
    {
        std::ofstream o(stats_path);
        write_stats_block(o, report);
    }
    {
        std::ofstream o(sel_path);
        write_selection_csv(o, report);
    }
    json noise = json::array();
    for (const NoiseSetting& n : opt.noise)
        noise.push_back({{"kind", n.kind}, {"level", n.level}});
    write_manifest((dir / "manifest.json").string(), "benchmark", argv,
                   {{"inputs", a.data}, {"outputs", {report_path, stats_path, sel_path}}, {"seed", a.seed},
                    {"presets", a.presets}, {"noise", noise}, {"folds", a.folds},
                    {"noise_scope", a.noise_train_only ? "train" : "all"},
                    {"grid", {{"C", opt.grid.C}, {"eta", opt.grid.eta}, {"tau", opt.grid.tau},
                              {"p", opt.grid.p}, {"sigma", opt.grid.sigma}}},
                    {"base_config", config_json(opt.base)}});
    write_report_csv(out, report);
    out << '\n';
    write_stats_block(out, report);
    return kOk;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
    double chi2 = -1.0;
    int k = 0;
    int N = 0;
    double q_alpha = 0.0;
};

int cmd_stats(const StatsArgs& a, std::ostream& out)
{
    if (a.k < 2 || a.N < 1)
        throw std::invalid_argument("stats: need --k >= 2 and --N >= 1");
    out << "k " << a.k << "\nN " << a.N << '\n';
    if (a.chi2 >= 0.0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f", friedman_ff(a.chi2, a.N, a.k));
        out << "F_F " << buf << '\n';
    }
    const std::optional<double> q = a.q_alpha > 0.0 ? std::optional<double>(a.q_alpha) : nemenyi_q010(a.k);
    if (!q)
        throw std::invalid_argument("stats: no built-in q_0.1 for k = " + std::to_string(a.k) + "; pass --q-alpha");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", nemenyi_cd(a.k, a.N, *q));
    out << "CD " << buf << '\n';
    return kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    std::string name;
    double prob = 0.7;
    double eta = 1.0;
    double tau = 0.5;
    double p = 0.5;
    double lambda = 1.0;
    double degeneracy_eta = 1e-6;
    double C = 1.0;
    std::uint64_t seed = 0;
};

int check_loss(const CheckArgs& a, std::ostream& out)
{
    const LossParams params(a.lambda, a.eta, a.tau, a.p);
    double worst = 0.0;
    bool bounded = true;
    for (int i = 0; i <= 120000; ++i) {
        const double mag = std::pow(10.0, -6.0 + 12.0 * i / 120000.0);
        for (double z : {mag, -mag}) {
            const double v = baen_loss(z, params);
            bounded = bounded && v >= 0.0 && v < 1.0 / a.lambda;
            worst = std::max(worst, v);
        }
    }
    out << "boundedness: max L_baen = " << fmt(worst, 12) << " (bound " << fmt(1.0 / a.lambda) << ") "
        << (bounded ? "PASS" : "FAIL") << '\n';

    const LossParams degenerate(a.degeneracy_eta, a.degeneracy_eta, a.tau, a.p);
    double gap = 0.0;
    for (int i = -10000; i <= 10000; ++i) {
        const double z = i * 1e-3;
        gap = std::max(gap, std::abs(baen_loss(z, degenerate) - aen_loss(z, degenerate)));
    }
    const bool degenerate_ok = gap <= 1e-4;
    out << "degeneracy (eta = lambda = " << fmt(a.degeneracy_eta) << "): max |L_baen - L_aen| on [-10,10] = "
        << fmt(gap) << " (tol 1e-4) " << (degenerate_ok ? "PASS" : "FAIL") << '\n';
    if (!bounded || !degenerate_ok)
        throw CheckFailure("loss check failed");
    return kOk;
}

int check_gradient(const CheckArgs& a, std::ostream& out)
{
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> zdist(-10.0, 10.0);
    std::vector<LossParams> sets{LossParams(a.lambda, a.eta, a.tau, a.p)};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < 19; ++s)
        sets.emplace_back(0.2 + 2.0 * unit(rng), 0.1 + 4.0 * unit(rng), unit(rng), 0.05 + 0.9 * unit(rng));
    double worst = 0.0;
    for (const LossParams& lp : sets) {
        for (int i = 0; i < 50; ++i) {
            double z = zdist(rng);
            if (std::abs(z) < 1e-4)
                z = 1e-4;
            const double h = 1e-6 * std::max(1.0, std::abs(z));
            const double fd = (baen_loss(z + h, lp) - baen_loss(z - h, lp)) / (2.0 * h);
            const double g = baen_gradient(z, lp);
            worst = std::max(worst, g != 0.0 ? std::abs(fd - g) / std::abs(g) : std::abs(fd));
        }
    }
    const bool ok = worst <= 1e-5;
    out << "gradient: max relative finite-difference error = " << fmt(worst) << " (tol 1e-5) "
        << (ok ? "PASS" : "FAIL") << '\n';
    if (!ok)
        throw CheckFailure("gradient check failed");
    return kOk;
}

int check_vtub(const CheckArgs& a, std::ostream& out)
{
    Dataset ds = make_gaussian_twoclass(10, Vector::Constant(2, 1.0), Vector::Constant(2, -1.0), a.seed);
    TrainConfig cfg;
    cfg.C = a.C;
    cfg.loss = LossParams(1.0, a.eta, a.tau, a.p);
    const Model model = fit(ds.X, ds.y, cfg);
    const VtubReport rep = vtub_check(model, ds);
    if (!rep.hypothesis_met)
        out << "notice: " << rep.note << " (diagnostic only)\n";
    out << "theta_min " << fmt(rep.theta_min) << "\ntheta_max " << fmt(rep.theta_max) << "\nfrobenius "
        << fmt(rep.frobenius) << "\npairs " << rep.pairs.size() << "\nsatisfaction_rate "
        << fmt(rep.satisfaction_rate) << '\n';
    return kOk;
}

int check_fisher(const CheckArgs& a, std::ostream& out)
{
    const LossParams params(a.lambda, a.eta, a.tau, a.p);
    const FisherProbe probe = fisher_probe(params, a.prob);
    const int bayes = a.prob > 0.5 ? 1 : (a.prob < 0.5 ? -1 : 0);
    const bool ok = probe.sign == bayes;
    out << "fisher: P(y=+1) = " << fmt(a.prob) << ", v* = " << fmt(probe.v_star) << ", sign " << probe.sign
        << ", Bayes sign " << bayes << ' ' << (ok ? "PASS" : "FAIL") << '\n';
    if (!ok)
        throw CheckFailure("fisher check failed");
    return kOk;
}

int check_influence(const CheckArgs& a, std::ostream& out)
{
    const Dataset base = inject_outliers(make_gaussian_twoclass(75, Vector::Constant(2, 3.0), Vector::Constant(2, -3.0), a.seed),
                                         {{-1, 3}}, a.seed + 1);
    const Vector dir = Vector::Constant(2, 1.0 / std::sqrt(2.0));
    const std::vector<double> mags{1e2, 1e3, 1e4};
    TrainConfig cfg;
    cfg.C = a.C;
    cfg.loss = LossParams(1.0, a.eta, a.tau, a.p);
    const auto bounded = influence_probe(base, dir, mags, cfg);
    const auto unbounded = influence_probe(base, dir, mags, apply_preset(cfg, "aen"));
    for (std::size_t i = 1; i < mags.size(); ++i)
        out << "magnitude " << fmt(mags[i]) << ": bounded step " << fmt(bounded[i].distance) << ", unbounded step "
            << fmt(unbounded[i].distance) << '\n';
    const double last = bounded.back().distance;
    const double limit = 1e-3 * (1.0 + bounded.back().coefficients.norm());
    bool ok = last <= limit;
    for (std::size_t i = 2; i < bounded.size(); ++i)
        ok = ok && bounded[i].distance <= bounded[i - 1].distance;
    out << "influence: last step " << fmt(last) << " (limit " << fmt(limit) << ") " << (ok ? "PASS" : "FAIL") << '\n';
    if (!ok)
        throw CheckFailure("influence check failed");
    return kOk;
}

int cmd_check(const CheckArgs& a, std::ostream& out)
{
    if (a.name == "loss")
        return check_loss(a, out);
    if (a.name == "gradient")
        return check_gradient(a, out);
    if (a.name == "vtub")
        return check_vtub(a, out);
    if (a.name == "fisher")
        return check_fisher(a, out);
    if (a.name == "influence")
        return check_influence(a, out);
    throw std::invalid_argument("unknown checker '" + a.name + "' (expected loss|gradient|vtub|fisher|influence)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bounded asymmetric elastic net SVM toolkit", "baen"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "generate two-class Gaussian data");
    s->add_option("--n", synth.n, "samples per class")->capture_default_str();
    s->add_option("--mu-plus", synth.mu_plus, "positive-class mean")->capture_default_str();
    s->add_option("--mu-minus", synth.mu_minus, "negative-class mean")->capture_default_str();
    s->add_flag("--case1", synth.case1, "add 3 outliers to the negative class");
    s->add_flag("--case2", synth.case2, "add 3 outliers to each class");
    s->add_option("--outliers-neg", synth.outliers_neg, "outliers labelled -1");
    s->add_option("--outliers-pos", synth.outliers_pos, "outliers labelled +1");
    s->add_option("--seed", synth.seed)->capture_default_str();
    s->add_option("--out", synth.out, "output CSV")->required();

    NoiseArgs noise;
    auto* nz = app.add_subcommand("noise", "inject label and/or feature noise");
    nz->add_option("--in", noise.in)->required();
    nz->add_option("--out", noise.out)->required();
    nz->add_option("--label-column", noise.label_column);
    nz->add_option("--label-noise", noise.label_noise, "fraction of labels to flip")->capture_default_str();
    nz->add_option("--feature-noise-ratio", noise.feature_ratio, "noise variance / feature variance")->capture_default_str();
    nz->add_option("--seed", noise.seed)->capture_default_str();

    TrainArgs train;
    auto* tr = app.add_subcommand("train", "fit a model");
    tr->add_option("--data", train.data)->required();
    tr->add_option("--label-column", train.label_column);
    tr->add_option("--model", train.model, "output model file")->required();
    tr->add_flag("--no-standardize", train.no_standardize);
    train.config.attach(*tr);

    PredictArgs pred;
    auto* pr = app.add_subcommand("predict", "score a CSV with a trained model");
    pr->add_option("--model", pred.model)->required();
    pr->add_option("--data", pred.data)->required();
    pr->add_option("--label-column", pred.label_column);
    pr->add_option("--out", pred.out)->required();
    pr->add_flag("--no-labels", pred.no_labels, "every column is a feature");

    CvArgs cv;
    auto* c = app.add_subcommand("cv", "stratified k-fold cross-validation");
    c->add_option("--data", cv.data)->required();
    c->add_option("--label-column", cv.label_column);
    c->add_option("--folds", cv.folds)->capture_default_str();
    c->add_option("--seed", cv.seed)->capture_default_str();
    c->add_flag("--no-standardize", cv.no_standardize);
    cv.config.attach(*c);

    BenchArgs bench;
    auto* b = app.add_subcommand("benchmark", "grid search + CV over datasets, presets and noise settings");
    b->add_option("--data", bench.data)->required()->expected(1, -1);
    b->add_option("--label-column", bench.label_column);
    b->add_option("--presets", bench.presets)->expected(1, -1)->capture_default_str();
    b->add_option("--label-noise", bench.label_noise, "add a label-noise setting with this rate");
    b->add_option("--feature-noise-ratio", bench.feature_ratio, "add a feature-noise setting with this ratio");
    b->add_flag("--skip-clean", bench.skip_clean, "omit the noise-free setting");
    b->add_flag("--noise-train-only", bench.noise_train_only, "inject noise into training folds only");
    b->add_option("--folds", bench.folds)->capture_default_str();
    b->add_option("--seed", bench.seed)->capture_default_str();
    b->add_option("--grid", bench.grid, "standard | small")->capture_default_str();
    b->add_option("--grid-C", bench.grid_C, "comma list");
    b->add_option("--grid-eta", bench.grid_eta, "comma list");
    b->add_option("--grid-tau", bench.grid_tau, "comma list");
    b->add_option("--grid-p", bench.grid_p, "comma list");
    b->add_option("--grid-sigma", bench.grid_sigma, "comma list");
    b->add_option("--q-alpha", bench.q_alpha, "Nemenyi critical value (built in for k = 7)");
    b->add_flag("--no-standardize", bench.no_standardize);
    b->add_option("--out-dir", bench.out_dir)->capture_default_str();
    bench.config.attach(*b);

    StatsArgs stats;
    auto* st = app.add_subcommand("stats", "Friedman F_F and Nemenyi CD");
    st->add_option("--chi2", stats.chi2, "raw Friedman statistic");
    st->add_option("--k", stats.k, "number of models")->required();
    st->add_option("--N", stats.N, "number of datasets")->required();
    st->add_option("--q-alpha", stats.q_alpha, "Nemenyi critical value");

    CheckArgs check;
    auto* ck = app.add_subcommand("check", "run a property checker");
    ck->add_option("name", check.name, "loss | gradient | vtub | fisher | influence")->required();
    ck->add_option("--prob", check.prob)->capture_default_str();
    ck->add_option("--eta", check.eta)->capture_default_str();
    ck->add_option("--tau", check.tau)->capture_default_str();
    ck->add_option("--p", check.p)->capture_default_str();
    ck->add_option("--lambda", check.lambda)->capture_default_str();
    ck->add_option("--degeneracy-eta", check.degeneracy_eta)->capture_default_str();
    ck->add_option("--C", check.C)->capture_default_str();
    ck->add_option("--seed", check.seed)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kUsageError;
    }

    try {
        if (s->parsed())
            return cmd_synth(synth, args, out);
        if (nz->parsed())
            return cmd_noise(noise, args, out);
        if (tr->parsed())
            return cmd_train(train, args, out);
        if (pr->parsed())
            return cmd_predict(pred, args, out);
        if (c->parsed())
            return cmd_cv(cv, out);
        if (b->parsed())
            return cmd_benchmark(bench, args, out);
        if (st->parsed())
            return cmd_stats(stats, out);
        if (ck->parsed())
            return cmd_check(check, out);
    } catch (const CheckFailure& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}

} // namespace baen::cli
