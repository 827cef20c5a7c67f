#include "baen/kernel.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>
#include <stdexcept>

using namespace baen;

namespace {

Matrix random_matrix(int n, int d, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix X(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            X(i, j) = g(rng);
    return X;
}

Vector vec(std::initializer_list<double> v)
{
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}

} // namespace

TEST_CASE("kernel_eval hand values")
{
    CHECK(kernel_eval(vec({0, 0}), vec({0, 0}), KernelSpec::linear()) == 1.0);
    CHECK(kernel_eval(vec({1, 2}), vec({3, 4}), KernelSpec::linear()) == 12.0);
    for (double s : {0.01, 1.0, 16.0})
        CHECK(kernel_eval(vec({1.5, -2}), vec({1.5, -2}), KernelSpec::rbf(s)) == 2.0);
    CHECK(kernel_eval(vec({0, 0}), vec({1, 1}), KernelSpec::rbf(0.5)) == doctest::Approx(std::exp(-1.0) + 1.0));
}

TEST_CASE("kernel spec validation")
{
    CHECK_THROWS_AS(kernel_eval(vec({1, 2}), vec({1, 2, 3}), KernelSpec::linear()), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::rbf(0.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::rbf(-1.0), std::invalid_argument);
    CHECK_THROWS(KernelSpec::parse("poly", 1.0));
    CHECK(KernelSpec::parse("rbf", 2.0).kind() == KernelKind::Rbf);
    CHECK(KernelSpec::parse("linear", 2.0).kind() == KernelKind::Linear);
}

TEST_CASE("gram matrix shape and entries")
{
    const Matrix one = random_matrix(1, 3, 1);
    const Matrix g1 = gram_matrix(one, KernelSpec::linear());
    REQUIRE(g1.rows() == 1);
    CHECK(g1(0, 0) == kernel_eval(one.row(0).transpose(), one.row(0).transpose(), KernelSpec::linear()));

    const Matrix X = random_matrix(5, 3, 2);
    for (const KernelSpec& k : {KernelSpec::linear(), KernelSpec::rbf(0.7)}) {
        const Matrix G = gram_matrix(X, k);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const double ref = kernel_eval(X.row(i).transpose(), X.row(j).transpose(), k);
                const double sym = kernel_eval(X.row(j).transpose(), X.row(i).transpose(), k);
                CHECK((G(i, j) == ref || G(i, j) == sym));
                CHECK(G(i, j) == G(j, i));
            }
    }
    const Matrix R = gram_matrix(random_matrix(30, 4, 3), KernelSpec::rbf(2.0));
    CHECK((R.diagonal().array() == 2.0).all());
    CHECK((R.diagonal().array() >= 1.0).all());
}

TEST_CASE("parallel gram matches the serial reference bit for bit")
{
    const Matrix X = random_matrix(120, 6, 4);
    for (const KernelSpec& k : {KernelSpec::linear(), KernelSpec::rbf(0.3)}) {
        const Matrix a = gram_matrix(X, k);
        const Matrix b = gram_matrix_serial(X, k);
        CHECK((a.array() == b.array()).all());
    }
}

TEST_CASE("rbf gram minus the constant is positive semidefinite")
{
    const Matrix X = random_matrix(40, 3, 5);
    const Matrix K = gram_matrix(X, KernelSpec::rbf(1.0)) - Matrix::Ones(40, 40);
    const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(K).eigenvalues().minCoeff();
    CHECK(lo >= -1e-8 * 40);
    CHECK((base_kernel_matrix(X, KernelSpec::rbf(1.0)) - K).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("rbf ignores an appended constant coordinate")
{
    const Matrix X = random_matrix(6, 2, 6);
    Matrix Xa(6, 3);
    Xa << X, Vector::Ones(6);
    const KernelSpec k = KernelSpec::rbf(0.8);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(k.base(X.row(i).transpose(), X.row(j).transpose())
                  == doctest::Approx(k.base(Xa.row(i).transpose(), Xa.row(j).transpose())).epsilon(1e-15));
}
