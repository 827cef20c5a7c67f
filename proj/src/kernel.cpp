#include "baen/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace baen {

KernelSpec KernelSpec::rbf(double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("kernel: RBF sigma must be positive");
    KernelSpec spec;
    spec.kind_ = KernelKind::Rbf;
    spec.sigma_ = sigma;
    return spec;
}

double KernelSpec::base(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) const
{
    double acc = 0.0;
    if (kind_ == KernelKind::Linear) {
        for (Eigen::Index k = 0; k < a.size(); ++k)
            acc += a[k] * b[k];
        return acc;
    }
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::exp(-sigma_ * acc);
}

std::string KernelSpec::name() const
{
    return kind_ == KernelKind::Linear ? "linear" : "rbf";
}

KernelSpec KernelSpec::parse(const std::string& name, double sigma)
{
    if (name == "linear")
        return linear();
    if (name == "rbf")
        return rbf(sigma);
    throw std::invalid_argument("kernel: unknown kernel '" + name + "' (expected linear|rbf)");
}

double kernel_eval(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b,
                   const KernelSpec& spec)
{
    if (a.size() != b.size())
        throw std::invalid_argument("kernel_eval: dimension mismatch (" + std::to_string(a.size())
                                    + " vs " + std::to_string(b.size()) + ")");
    return spec.base(a, b) + 1.0;
}

namespace {

// Row i of the upper triangle; shared by the serial and parallel drivers so
// both produce the same bits.
void fill_row(const Matrix& X, const KernelSpec& spec, Eigen::Index i, double offset, Matrix& G)
{
    const Vector xi = X.row(i).transpose();
    for (Eigen::Index j = i; j < X.rows(); ++j) {
        const Vector xj = X.row(j).transpose();
        G(i, j) = spec.base(xi, xj) + offset;
    }
}

void mirror(Matrix& G)
{
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            G(i, j) = G(j, i);
}

Matrix parallel_gram(const Matrix& X, const KernelSpec& spec, double offset)
{
    const Eigen::Index n = X.rows();
    Matrix G(n, n);
    // dynamic schedule: row i has n - i entries
#pragma omp parallel for schedule(dynamic, 8)
    for (Eigen::Index i = 0; i < n; ++i)
        fill_row(X, spec, i, offset, G);
    mirror(G);
    return G;
}

} // namespace

Matrix gram_matrix(const Matrix& X, const KernelSpec& spec)
{
    return parallel_gram(X, spec, 1.0);
}

Matrix gram_matrix_serial(const Matrix& X, const KernelSpec& spec)
{
    const Eigen::Index n = X.rows();
    Matrix G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        fill_row(X, spec, i, 1.0, G);
    mirror(G);
    return G;
}

Matrix base_kernel_matrix(const Matrix& X, const KernelSpec& spec)
{
    return parallel_gram(X, spec, 0.0);
}

} // namespace baen
