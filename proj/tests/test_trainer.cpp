#include "baen/data.hpp"
#include "baen/trainer.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace baen;

namespace {

Dataset blobs(int per_class, double sep, std::uint64_t seed)
{
    return make_gaussian_twoclass(per_class, Vector::Constant(2, sep), Vector::Constant(2, -sep), seed);
}

/// Model whose decision function is the constant `f`.
Model constant_model(double f)
{
    Model m;
    m.support_X = Matrix::Zero(1, 1);
    m.y = Vector::Ones(1);
    m.alpha = Vector::Constant(1, f);
    m.beta = Vector::Zero(1);
    return m;
}

TrainConfig tight_config()
{
    TrainConfig c;
    c.solver.inner_tol = 1e-14;
    c.hq_tol = 1e-8;
    return c;
}

} // namespace

TEST_CASE("update_delta values")
{
    const LossParams lp;
    CHECK(update_delta(0.0, 1.0, lp) == -1.0);
    CHECK(update_delta(-3.0, 1.0, LossParams(1, 1, 0.0, 0.5)) == -1.0);
    CHECK(update_delta(std::sqrt(2.0), 1.0, LossParams(1, 1, 0.5, 1.0)) == doctest::Approx(-0.25).epsilon(1e-14));
    const double far = update_delta(1e6, 1.0, lp);
    CHECK(far < 0.0);
    CHECK(far > -1e-6);
}

TEST_CASE("weights_from_delta values and errors")
{
    CHECK(weights_from_delta(Vector::Constant(2, -1.0), 4.0, 0.5)[0] == doctest::Approx(2.0));
    CHECK(weights_from_delta(Vector::Constant(1, -0.25), 1.0, 1.0)[0] == doctest::Approx(0.25));
    const Vector w = weights_from_delta(Vector::Constant(5, -1.0), 3.0, 2.0);
    CHECK((w.array() == 6.0).all());
    CHECK_THROWS_AS(weights_from_delta(Vector::Constant(1, 0.0), 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(weights_from_delta(Vector::Constant(1, -1.5), 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("config validation and presets")
{
    TrainConfig c;
    CHECK_NOTHROW(c.validate());
    c.C = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = TrainConfig{};
    c.loss = LossParams(2.0, 1.0, 0.5, 0.5);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.bounded = false;
    CHECK_NOTHROW(c.validate());
    c = TrainConfig{};
    c.loss = LossParams(1.0, 1.0, 0.5, 0.0);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    const TrainConfig en = apply_preset(TrainConfig{}, "en");
    CHECK_FALSE(en.bounded);
    CHECK(en.loss.tau() == 0.0);
    const TrainConfig bals = apply_preset(TrainConfig{}, "bals-like");
    CHECK(bals.bounded);
    CHECK(bals.loss.p() == 1.0);
    CHECK(bals.loss.tau() == 1.0);
    CHECK(apply_preset(TrainConfig{}, "bq-approx").loss.p() == 1e-3);
    CHECK_FALSE(apply_preset(TrainConfig{}, "aen").bounded);
    CHECK(apply_preset(TrainConfig{}, "baen").preset == "baen");
    CHECK_THROWS_AS(apply_preset(TrainConfig{}, "hinge"), std::invalid_argument);
    CHECK(preset_names().size() == 5);
}

TEST_CASE("two points in one dimension are separated")
{
    Matrix X(2, 1);
    X << -1.0, 1.0;
    Vector y(2);
    y << -1.0, 1.0;
    const Model m = fit(X, y, TrainConfig{});
    CHECK(decision_value(m, Vector::Constant(1, -1.0)) < 0.0);
    CHECK(decision_value(m, Vector::Constant(1, 1.0)) > 0.0);
    CHECK((predict(m, X).array() == y.array()).all());
    CHECK((m.alpha.array() >= 0.0).all());
    CHECK((m.beta.array() >= 0.0).all());
}

TEST_CASE("fit input errors")
{
    Matrix X(3, 1);
    X << 1, 2, 3;
    CHECK_THROWS_AS(fit(X, Vector::Ones(3), TrainConfig{}), std::invalid_argument);
    Vector bad(3);
    bad << 1, -1, 2;
    CHECK_THROWS_AS(fit(X, bad, TrainConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(fit(X, Vector::Ones(2), TrainConfig{}), std::invalid_argument);
}

TEST_CASE("unbounded tau = 0 fit reproduces the elastic-net SVM")
{
    const Dataset ds = blobs(10, 0.7, 3);
    TrainConfig c = apply_preset(TrainConfig{}, "en");
    c.C = 2.0;
    c.loss = LossParams(1.0, 1.0, 0.0, 0.4);
    c.solver.inner_tol = 1e-14;
    const Model m = fit(ds.X, ds.y, c);
    const Eigen::Index n = ds.rows();

    Matrix Xa(n, 3);
    Xa << ds.X, Vector::Ones(n);
    const double c1 = c.C * 0.4, c2 = c.C * 0.6;
    const Matrix Kh = ds.y.asDiagonal() * (Xa * Xa.transpose()) * ds.y.asDiagonal();
    Matrix H(2 * n, 2 * n);
    const Matrix I = Matrix::Identity(n, n) / c1;
    H << Kh + I, I, I, I;
    Vector q(2 * n);
    q << Vector::Constant(n, 1.0 + c2 / c1), Vector::Constant(n, c2 / c1);
    const Vector u = oracle::fista_nonneg(H, q);
    const Vector w_ref = Xa.transpose() * ds.y.asDiagonal() * u.head(n);
    const Vector w_ours = Xa.transpose() * expansion_coefficients(m);
    const double ref = oracle::en_svm_primal(Xa, ds.y, w_ref, c1, c2);
    const double ours = oracle::en_svm_primal(Xa, ds.y, w_ours, c1, c2);
    CHECK(std::abs(ours - ref) <= 1e-4 * std::abs(ref));
    CHECK((m.beta.array() == 0.0).all());
}

TEST_CASE("continuing a capped fit equals a longer fit")
{
    const Dataset ds = inject_outliers(blobs(20, 1.5, 4), {{-1, 2}}, 5);
    TrainConfig c = tight_config();
    c.hq_max_iters = 2;
    const Model partial = fit(ds.X, ds.y, c);
    REQUIRE(partial.diagnostics.hq_iterations == 2);
    const Model resumed = fit_continue(partial, 3);
    c.hq_max_iters = 5;
    const Model full = fit(ds.X, ds.y, c);
    CHECK(resumed.diagnostics.hq_iterations == full.diagnostics.hq_iterations);
    CHECK((resumed.dual - full.dual).norm() <= 1e-10);
    CHECK_THROWS_AS(fit_continue(partial, -1), std::invalid_argument);
}

TEST_CASE("restarting at a fixed point stops after one outer iteration")
{
    const Dataset ds = blobs(15, 2.0, 6);
    TrainConfig c = tight_config();
    c.hq_tol = 1e-6;
    Model m = fit(ds.X, ds.y, c);
    REQUIRE(m.diagnostics.hq_converged);
    m.diagnostics.hq_converged = false;
    const int before = m.diagnostics.hq_iterations;
    const Model again = fit_continue(m, 10);
    CHECK(again.diagnostics.hq_iterations == before + 1);
    CHECK(again.diagnostics.last_step < c.hq_tol);
}

TEST_CASE("decision values")
{
    Model zero = constant_model(0.0);
    zero.support_X = Matrix::Random(4, 3);
    zero.y = Vector::Ones(4);
    zero.alpha = Vector::Zero(4);
    zero.beta = Vector::Zero(4);
    CHECK(decision_value(zero, Vector::Random(3)) == 0.0);

    Model single;
    single.support_X = Matrix::Zero(1, 2);
    single.support_X(0, 0) = 1.0;
    single.y = Vector::Ones(1);
    single.alpha = Vector::Ones(1);
    single.beta = Vector::Zero(1);
    Vector x(2);
    x << 1.0, 0.0;
    CHECK(decision_value(single, x) == 2.0);
    CHECK_THROWS_AS(decision_value(single, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("decision values match a naive summation exactly")
{
    const Dataset ds = blobs(12, 1.0, 7);
    TrainConfig c;
    c.kernel = KernelSpec::rbf(0.5);
    const Model m = fit(ds.X, ds.y, c);
    const Dataset test = blobs(30, 1.0, 8);
    const Vector par = decision_values(m, test.X);
    const Vector ser = decision_values_serial(m, test.X);
    for (Eigen::Index r = 0; r < test.rows(); ++r) {
        double f = 0.0;
        for (Eigen::Index i = 0; i < m.samples(); ++i) {
            const Vector xi = m.support_X.row(i).transpose();
            f += m.y[i] * kernel_eval(test.X.row(r).transpose(), xi, c.kernel) * (m.alpha[i] - m.beta[i]);
        }
        CHECK(par[r] == f);
        CHECK(ser[r] == f);
    }
}

TEST_CASE("predict sign convention")
{
    const Matrix X = Matrix::Zero(1, 1);
    CHECK(predict(constant_model(0.5), X)[0] == 1.0);
    CHECK(predict(constant_model(-0.5), X)[0] == -1.0);
    CHECK(predict(constant_model(0.0), X)[0] == 1.0);
}

TEST_CASE("slacks")
{
    const Matrix X = Matrix::Zero(1, 1);
    const Vector y = Vector::Ones(1);
    Model m = constant_model(1.0);
    CHECK(slacks(m, X, y)[0] == 0.0);
    m = constant_model(0.5);
    CHECK(slacks(m, X, y)[0] == doctest::Approx(0.5));
    m = constant_model(3.0);
    CHECK(slacks(m, X, y)[0] == doctest::Approx(1.0));
    m.config.loss = LossParams(1, 1, 0.0, 0.5);
    CHECK(slacks(m, X, y)[0] == 0.0);
    m = constant_model(-2.0);
    m.config.loss = LossParams(1, 1, 0.0, 0.5);
    CHECK(slacks(m, X, y)[0] == doctest::Approx(3.0));
}

TEST_CASE("primal objective")
{
    Model m;
    m.support_X = Matrix::Random(6, 2);
    m.y = Vector::Ones(6);
    m.alpha = Vector::Zero(6);
    m.beta = Vector::Zero(6);
    m.config.C = 3.0;
    const double expect = 3.0 * 6 * baen_loss(1.0, m.config.loss);
    CHECK(primal_objective(m, m.support_X, m.y) == doctest::Approx(expect));

    const Dataset ds = blobs(10, 1.0, 9);
    TrainConfig c;
    c.C = 1e-8;
    const Model tiny = fit(ds.X, ds.y, c);
    const Vector coef = expansion_coefficients(tiny);
    const double reg = 0.5 * coef.dot(gram_matrix(ds.X, c.kernel) * coef);
    const double obj = primal_objective(tiny, ds.X, ds.y);
    CHECK(reg < 1e-12);
    CHECK(obj >= reg);
    CHECK(obj - reg <= c.C * ds.rows());
}

TEST_CASE("outer objective is monotone and delta stays in range")
{
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Dataset ds = inject_outliers(blobs(25, 1.0, seed), {{-1, 3}, {1, 2}}, seed + 100);
        TrainConfig c = tight_config();
        c.hq_tol = 1e-6;
        c.loss = LossParams(1.0, 0.5 + seed * 0.4, 0.2 * (seed % 4), 0.3 + 0.1 * (seed % 3));
        if (seed % 2)
            c.kernel = KernelSpec::rbf(0.5);
        const Model m = fit(ds.X, ds.y, c);
        const auto& trace = m.diagnostics.objective_trace;
        REQUIRE(!trace.empty());
        for (std::size_t i = 1; i < trace.size(); ++i)
            CHECK(trace[i] <= trace[i - 1] + 1e-6 * (1.0 + std::abs(trace[i - 1])));
        for (const auto& [lo, hi] : m.diagnostics.delta_range) {
            CHECK(lo >= -1.0);
            CHECK(hi < 0.0);
        }
        CHECK(trace.back() == doctest::Approx(primal_objective(m, ds.X, ds.y)).epsilon(1e-9));
    }
}

TEST_CASE("small eta bounded fit agrees with the unbounded fit in labels")
{
    const Dataset ds = blobs(20, 1.0, 12);
    TrainConfig unb = apply_preset(TrainConfig{}, "aen");
    unb.solver.inner_tol = 1e-14;
    const double eta = 1e-4;
    TrainConfig bnd = tight_config();
    bnd.loss = LossParams(1.0, eta, 0.5, 0.5);
    bnd.C = unb.C / eta;
    const Model a = fit(ds.X, ds.y, unb);
    const Model b = fit(ds.X, ds.y, bnd);
    Matrix grid(41 * 41, 2);
    for (int i = 0; i < 41; ++i)
        for (int j = 0; j < 41; ++j) {
            grid(i * 41 + j, 0) = -4.0 + 0.2 * i;
            grid(i * 41 + j, 1) = -4.0 + 0.2 * j;
        }
    CHECK((predict(a, grid).array() == predict(b, grid).array()).all());
}

TEST_CASE("standardizer")
{
    Matrix X(4, 2);
    X << 1, 5, 2, 5, 3, 5, 4, 5;
    const Standardizer s = Standardizer::fit(X);
    const Matrix Z = s.apply(X);
    CHECK(Z.col(0).mean() == doctest::Approx(0.0).scale(1.0));
    CHECK(std::sqrt(Z.col(0).squaredNorm() / 4.0) == doctest::Approx(1.0));
    CHECK((Z.col(1).array() == 5.0).all());

    const Dataset ds = blobs(10, 1.0, 13);
    const Model m = fit_standardized(ds.X, ds.y, TrainConfig{});
    REQUIRE(m.scaler);
    const Standardizer sc = Standardizer::fit(ds.X);
    const Model manual = fit(sc.apply(ds.X), ds.y, TrainConfig{});
    CHECK((decision_values(m, ds.X) - decision_values(manual, sc.apply(ds.X))).norm() <= 1e-12);
}
