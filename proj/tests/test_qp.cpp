#include "baen/kernel.hpp"
#include "baen/qp.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

using namespace baen;

namespace {

Matrix m1(double v) { return Matrix::Constant(1, 1, v); }
Vector v1(double v) { return Vector::Constant(1, v); }

SolverConfig tight()
{
    SolverConfig c;
    c.inner_tol = 1e-15;
    return c;
}

struct Problem {
    Matrix gram;
    Vector y;
    Vector omega;
};

Problem random_problem(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    Matrix X(n, 2);
    Vector y(n), w(n);
    for (int i = 0; i < n; ++i) {
        y[i] = i % 2 == 0 ? 1.0 : -1.0;
        X(i, 0) = g(rng) + y[i];
        X(i, 1) = g(rng) + y[i];
        w[i] = u(rng);
    }
    return {gram_matrix(X, KernelSpec::linear()), y, w};
}

} // namespace

TEST_CASE("solver hand examples")
{
    auto r = solve_clipdcd(NonnegQp::dense(m1(2), v1(4)), SolverConfig{});
    CHECK(r.u[0] == doctest::Approx(2.0));
    CHECK(r.converged);

    r = solve_clipdcd(NonnegQp::dense(m1(1), v1(-3)), SolverConfig{});
    CHECK(r.u[0] == 0.0);
    CHECK(r.iterations == 0);

    Vector q(2);
    q << 1, -1;
    r = solve_clipdcd(NonnegQp::dense(Matrix::Identity(2, 2), q), SolverConfig{});
    CHECK(r.u[0] == doctest::Approx(1.0));
    CHECK(r.u[1] == 0.0);
}

TEST_CASE("kkt residual hand examples")
{
    CHECK(kkt_residual(NonnegQp::dense(m1(2), v1(4)), v1(2)) == 0.0);
    CHECK(kkt_residual(NonnegQp::dense(Matrix::Identity(3, 3), -Vector::Ones(3)), Vector::Zero(3)) == 0.0);
    CHECK(kkt_residual(NonnegQp::dense(Matrix::Identity(3, 3), Vector::Ones(3)), Vector::Zero(3)) == 1.0);
}

TEST_CASE("dense problem validation")
{
    Matrix asym(2, 2);
    asym << 1, 0.5, 0.4, 1;
    CHECK_THROWS_AS(NonnegQp::dense(asym, Vector::Ones(2)), std::invalid_argument);
    CHECK_THROWS_AS(NonnegQp::dense(Matrix::Zero(2, 2), Vector::Ones(2)), std::invalid_argument);
    CHECK_THROWS_AS(NonnegQp::dense(Matrix::Identity(2, 2), Vector::Ones(3)), std::invalid_argument);
    SolverConfig bad;
    bad.inner_tol = 0.0;
    CHECK_THROWS_AS(solve_clipdcd(NonnegQp::dense(m1(1), v1(1)), bad), std::invalid_argument);
    CHECK_THROWS_AS(solve_clipdcd(NonnegQp::dense(m1(1), v1(1)), SolverConfig{}, v1(-1)), std::invalid_argument);
}

TEST_CASE("dual assembly for one sample")
{
    const double k = 2.5, w = 0.8, p = 0.4, tau = 0.6;
    const NonnegQp qp = assemble_dual(m1(k), v1(1.0), v1(w), p, tau);
    const Matrix H = qp.to_dense();
    REQUIRE(H.rows() == 2);
    const double a = 1.0 / (p * w);
    CHECK(H(0, 0) == doctest::Approx(k + a));
    CHECK(H(0, 1) == doctest::Approx(-k + a / tau));
    CHECK(H(1, 0) == doctest::Approx(-k + a / tau));
    CHECK(H(1, 1) == doctest::Approx(k + a / (tau * tau)));
    CHECK(qp.q()[0] == doctest::Approx(1.0 + (1.0 - p) / p));
    CHECK(qp.q()[1] == doctest::Approx(-1.0 + (1.0 - p) / (p * tau)));
}

TEST_CASE("dual assembly matches the block formula")
{
    const Problem pr = random_problem(5, 1);
    const double p = 0.3, tau = 0.7;
    const NonnegQp qp = assemble_dual(pr.gram, pr.y, pr.omega, p, tau);
    const Matrix Kh = pr.y.asDiagonal() * pr.gram * pr.y.asDiagonal();
    const Matrix Om = pr.omega.cwiseInverse().asDiagonal();
    Matrix Q(10, 10), S(10, 10);
    Q << Kh, -Kh, -Kh, Kh;
    S << Om, Om / tau, Om / tau, Om / (tau * tau);
    const Matrix H = Q + S / p;
    CHECK((qp.to_dense() - H).cwiseAbs().maxCoeff() <= 1e-12 * H.cwiseAbs().maxCoeff());
    for (int k = 0; k < 10; ++k)
        CHECK(qp.diag(k) == doctest::Approx(H(k, k)));
    const Vector u = Vector::LinSpaced(10, 0.0, 1.0);
    CHECK((qp.multiply(u) - H * u).norm() <= 1e-12 * (H * u).norm());
    Vector g = Vector::Zero(10);
    qp.add_column(3, 2.0, g);
    CHECK((g - 2.0 * H.col(3)).norm() <= 1e-12);
}

TEST_CASE("p = 1 drops the linear terms")
{
    const Problem pr = random_problem(4, 2);
    const NonnegQp qp = assemble_dual(pr.gram, pr.y, pr.omega, 1.0, 0.5);
    CHECK((qp.q().head(4).array() == 1.0).all());
    CHECK((qp.q().tail(4).array() == -1.0).all());
}

TEST_CASE("dual assembly errors")
{
    const Problem pr = random_problem(3, 3);
    CHECK_THROWS_AS(assemble_dual(pr.gram, pr.y, -pr.omega, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(assemble_dual(pr.gram, pr.y, pr.omega, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(assemble_dual(pr.gram, pr.y, pr.omega, 0.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(assemble_dual(pr.gram, Vector::Ones(2), pr.omega, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("tau = 0: alpha block and agreement with the small-tau limit")
{
    const Problem pr = random_problem(2, 4);
    const double p = 0.5;
    const NonnegQp qp0 = assemble_dual(pr.gram, pr.y, pr.omega, p, 0.0);
    const Matrix Kh = pr.y.asDiagonal() * pr.gram * pr.y.asDiagonal();
    const Matrix Haa = Kh + Matrix((pr.omega * p).cwiseInverse().asDiagonal());
    CHECK((qp0.to_dense().topLeftCorner(2, 2) - Haa).cwiseAbs().maxCoeff() <= 1e-12);
    for (int k = 0; k < 2; ++k)
        CHECK(qp0.q()[k] == doctest::Approx(1.0 / p));

    const auto r0 = solve_clipdcd(qp0, tight());
    const double tau = 1e-6;
    const auto rt = solve_clipdcd(assemble_dual(pr.gram, pr.y, pr.omega, p, tau), tight());
    const Vector c0 = r0.u.head(2);
    const Vector ct = rt.u.head(2) - rt.u.tail(2);
    CHECK((c0 - ct).norm() <= 1e-4 * (1.0 + c0.norm()));
}

TEST_CASE("clipDCD agrees with active-set enumeration")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int t = 0; t < 60; ++t) {
        const int dim = 1 + t % 6;
        const Matrix H = oracle::random_spd(dim, rng);
        Vector q(dim);
        for (int k = 0; k < dim; ++k)
            q[k] = g(rng);
        const auto r = solve_clipdcd(NonnegQp::dense(H, q), tight());
        const Vector ref = oracle::active_set_qp(H, q);
        const double opt = oracle::qp_objective(H, q, ref);
        CHECK(std::abs(r.objective - opt) / (1.0 + std::abs(opt)) <= 1e-6);
        CHECK(r.kkt <= 1e-6);
        CHECK((r.u.array() >= 0.0).all());
    }
}

TEST_CASE("objective is monotone and iterates stay feasible")
{
    const Problem pr = random_problem(30, 8);
    const NonnegQp qp = assemble_dual(pr.gram, pr.y, pr.omega, 0.4, 0.5);
    double prev = 0.0;
    bool monotone = true;
    const auto r = solve_clipdcd(qp, SolverConfig{}, std::nullopt, [&](long, double obj) {
        monotone = monotone && obj <= prev + 1e-12 * (1.0 + std::abs(prev));
        prev = obj;
    });
    CHECK(monotone);
    CHECK(r.iterations > 0);
    CHECK((r.u.array() >= 0.0).all());
    CHECK(r.objective == doctest::Approx(qp.objective(r.u)));
}

TEST_CASE("incremental gradient stays close to a fresh product")
{
    const Problem pr = random_problem(1000, 9);
    const auto r = solve_clipdcd(assemble_dual(pr.gram, pr.y, pr.omega, 0.5, 0.5), tight());
    REQUIRE(r.iterations > 10000);
    CHECK(r.max_drift <= 1e-8);
}

TEST_CASE("warm start at the solution does no work")
{
    const Problem pr = random_problem(12, 10);
    const NonnegQp qp = assemble_dual(pr.gram, pr.y, pr.omega, 0.5, 0.3);
    const auto first = solve_clipdcd(qp, tight());
    const auto again = solve_clipdcd(qp, tight(), first.u);
    CHECK(again.iterations == 0);
    CHECK((again.u.array() == first.u.array()).all());
}

TEST_CASE("iteration cap is reported")
{
    const Problem pr = random_problem(40, 11);
    SolverConfig c = tight();
    c.max_inner_iters = 5;
    const auto r = solve_clipdcd(assemble_dual(pr.gram, pr.y, pr.omega, 0.5, 0.5), c);
    CHECK(r.iterations == 5);
    CHECK_FALSE(r.converged);
    CHECK(SolverConfig{}.cap_for(10) == 50000);
}

TEST_CASE("shared signed gram is reused without copying")
{
    const Problem pr = random_problem(6, 12);
    auto kh = std::make_shared<const Matrix>(signed_gram(pr.gram, pr.y));
    const NonnegQp a = NonnegQp::dual(kh, pr.omega, 0.5, 0.5);
    const NonnegQp b = assemble_dual(pr.gram, pr.y, pr.omega, 0.5, 0.5);
    CHECK((a.to_dense().array() == b.to_dense().array()).all());
    CHECK(a.samples() == 6);
    CHECK(a.dim() == 12);
}
