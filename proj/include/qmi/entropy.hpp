#pragma once

#include "qmi/channels.hpp"
#include "qmi/states.hpp"

#include <limits>

namespace qmi {

// Extended-real entropy value in nats. Relative entropies may be +infinity;
// `borderline` marks a support defect in (1e-10, 1e-6), where the
// finite/infinite branch decision is numerically sharp.
struct EntropyValue {
    double nats = 0.0;
    bool borderline = false;

    bool is_infinite() const { return std::isinf(nats); }
    static EntropyValue infinity(bool borderline_flag = false) {
        return EntropyValue{std::numeric_limits<double>::infinity(), borderline_flag};
    }
};

// Joint input-output distribution; entry (j,k) = P(output j, input k).
struct JointDistribution {
    RealMatrix matrix;
};

EntropyValue von_neumann(const DensityMatrix& rho);

EntropyValue umegaki_relative(const DensityMatrix& rho, const DensityMatrix& sigma,
                              double support_tol = 1e-10);

// General form on unnormalized positive operators; used by the scaling
// identity and the orthogonal-decomposition machinery only. Public callers
// should go through umegaki_relative.
EntropyValue relative_entropy_positive(const Matrix& a, const Matrix& b,
                                       double support_tol = 1e-10,
                                       double zero_tol = 1e-12);

EntropyValue shannon(const RealVector& p);

EntropyValue classical_relative(const RealVector& p, const RealVector& q);

JointDistribution joint_distribution(const RealVector& mu, const ClassicalChannel& t);

EntropyValue classical_mutual(const RealVector& mu, const ClassicalChannel& t);

// Returns (S(a rho, b sigma) on the scaled operators, a S(rho,sigma) - a ln(b/a)).
std::pair<EntropyValue, EntropyValue> relative_entropy_scaling_check(
    const DensityMatrix& rho, const DensityMatrix& sigma, double a, double b);

}  // namespace qmi
