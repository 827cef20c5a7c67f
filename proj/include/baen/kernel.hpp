#pragma once

#include <Eigen/Dense>

#include <string>

namespace baen {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class KernelKind { Linear, Rbf };

/// Kernel variant plus RBF width. Every kernel carries an implicit +1 term,
/// which reproduces the bias-augmented inner product (x, 1).(x', 1) for the
/// linear case and supplies a bias degree of freedom for RBF.
class KernelSpec {
public:
    KernelSpec() = default;
    static KernelSpec linear() { return KernelSpec{}; }
    static KernelSpec rbf(double sigma);

    KernelKind kind() const { return kind_; }
    double sigma() const { return sigma_; }

    /// Base kernel without the augmentation constant.
    double base(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) const;

    std::string name() const;
    static KernelSpec parse(const std::string& name, double sigma);

private:
    KernelKind kind_ = KernelKind::Linear;
    double sigma_ = 1.0;
};

/// k(a, b) = base(a, b) + 1. Throws std::invalid_argument on dimension mismatch.
double kernel_eval(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b,
                   const KernelSpec& spec);

/// Gram matrix over the rows of X, built in parallel across rows. Exactly
/// symmetric: each off-diagonal entry is computed once and mirrored.
Matrix gram_matrix(const Matrix& X, const KernelSpec& spec);

/// Serial reference for gram_matrix; bit-identical output.
Matrix gram_matrix_serial(const Matrix& X, const KernelSpec& spec);

/// Base-kernel matrix K(X, X^T) without the +1 term.
Matrix base_kernel_matrix(const Matrix& X, const KernelSpec& spec);

} // namespace baen
