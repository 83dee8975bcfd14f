#include "qmi/entropy.hpp"

#include <cmath>

namespace qmi {

namespace {

double clamp_defect(double v) { return (v < 0.0 && v > -1e-10) ? 0.0 : v; }

}  // namespace

EntropyValue von_neumann(const DensityMatrix& rho) {
    HermitianEig eig = hermitian_eig(rho.matrix);
    double s = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        double lam = eig.eigenvalues[i];
        if (lam > 1e-12) s -= lam * std::log(lam);
    }
    return EntropyValue{clamp_defect(s)};
}

EntropyValue relative_entropy_positive(const Matrix& a, const Matrix& b,
                                       double support_tol, double zero_tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimMismatch("relative_entropy_positive: operator shapes differ");

    HermitianEig eig_b = hermitian_eig(b);
    const int n = static_cast<int>(b.rows());

    // Range containment via the kernel projector of b.
    Matrix kernel_proj = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (eig_b.eigenvalues[i] <= zero_tol)
            kernel_proj += eig_b.eigenvectors.col(i) * eig_b.eigenvectors.col(i).adjoint();
    double defect = std::abs((a * kernel_proj).trace().real());
    if (defect > support_tol)
        return EntropyValue::infinity(defect < 1e-6);

    Matrix log_a = matrix_log_on_support(a, zero_tol);
    Matrix log_b = matrix_log_on_support(b, zero_tol);
    double value = (a * (log_a - log_b)).trace().real();
    return EntropyValue{value};
}

EntropyValue umegaki_relative(const DensityMatrix& rho, const DensityMatrix& sigma,
                              double support_tol) {
    if (rho.dim != sigma.dim)
        throw DimMismatch("umegaki_relative: dims " + std::to_string(rho.dim) +
                          " vs " + std::to_string(sigma.dim));
    EntropyValue v = relative_entropy_positive(rho.matrix, sigma.matrix, support_tol);
    if (!v.is_infinite()) v.nats = clamp_defect(v.nats);
    return v;
}

EntropyValue shannon(const RealVector& p) {
    check_distribution(p, 1e-10);
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p[i] > 1e-15) s -= p[i] * std::log(p[i]);
    return EntropyValue{clamp_defect(s)};
}

EntropyValue classical_relative(const RealVector& p, const RealVector& q) {
    if (p.size() != q.size())
        throw LengthMismatch("classical_relative: lengths " + std::to_string(p.size()) +
                             " vs " + std::to_string(q.size()));
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] <= 1e-15) continue;
        if (q[i] <= 1e-15) return EntropyValue::infinity();
        s += p[i] * std::log(p[i] / q[i]);
    }
    return EntropyValue{clamp_defect(s)};
}

JointDistribution joint_distribution(const RealVector& mu, const ClassicalChannel& t) {
    if (mu.size() != t.n_in)
        throw LengthMismatch("joint_distribution: input length " +
                             std::to_string(mu.size()) + " vs channel n_in " +
                             std::to_string(t.n_in));
    RealMatrix phi(t.n_out, t.n_in);
    for (int j = 0; j < t.n_out; ++j)
        for (int k = 0; k < t.n_in; ++k)
            phi(j, k) = t.matrix(j, k) * mu[k];
    return JointDistribution{phi};
}

EntropyValue classical_mutual(const RealVector& mu, const ClassicalChannel& t) {
    JointDistribution phi = joint_distribution(mu, t);
    RealVector out = t.matrix * mu;

    RealVector joint_flat(t.n_out * t.n_in), prod_flat(t.n_out * t.n_in);
    for (int j = 0; j < t.n_out; ++j)
        for (int k = 0; k < t.n_in; ++k) {
            joint_flat[j * t.n_in + k] = phi.matrix(j, k);
            prod_flat[j * t.n_in + k] = out[j] * mu[k];
        }
    return classical_relative(joint_flat, prod_flat);
}

std::pair<EntropyValue, EntropyValue> relative_entropy_scaling_check(
    const DensityMatrix& rho, const DensityMatrix& sigma, double a, double b) {
    if (a <= 0.0 || b <= 0.0)
        throw ParamOutOfRange("relative_entropy_scaling_check: a, b must be positive");
    EntropyValue scaled =
        relative_entropy_positive(a * rho.matrix, b * sigma.matrix);
    EntropyValue base = umegaki_relative(rho, sigma);
    EntropyValue predicted = base.is_infinite()
                                 ? EntropyValue::infinity()
                                 : EntropyValue{a * base.nats - a * std::log(b / a)};
    return {scaled, predicted};
}

}  // namespace qmi
