#include "qmi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmi {

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    double norm = m.norm();
    if (norm == 0.0) return true;
    return (m - m.adjoint()).norm() <= tol * norm;
}

HermitianEig hermitian_eig(const Matrix& m) {
    if (m.rows() != m.cols())
        throw NotSquare("hermitian_eig: " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + " input");
    if (!is_hermitian(m))
        throw NotHermitian("hermitian_eig: symmetry defect " +
                           std::to_string((m - m.adjoint()).norm()));

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    const int n = static_cast<int>(m.rows());

    // Eigen returns ascending order; flip to descending.
    HermitianEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }

    // Phase convention: first component with |x| > 1e-12 made real positive.
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < n; ++r) {
            Complex x = out.eigenvectors(r, i);
            if (std::abs(x) > 1e-12) {
                out.eigenvectors.col(i) *= std::conj(x) / std::abs(x);
                break;
            }
        }
    }
    return out;
}

Matrix matrix_log_on_support(const Matrix& m, double zero_tol) {
    HermitianEig eig = hermitian_eig(m);
    const int n = static_cast<int>(m.rows());
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double lam = eig.eigenvalues[i];
        if (lam < -zero_tol)
            throw NegativeEigenvalue("matrix_log_on_support: eigenvalue " +
                                     std::to_string(lam));
        if (lam > zero_tol)
            out += std::log(lam) * (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
    }
    return out;
}

Matrix matrix_exp_hermitian(const Matrix& m) {
    HermitianEig eig = hermitian_eig(m);
    const int n = static_cast<int>(m.rows());
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        out += std::exp(eig.eigenvalues[i]) *
               (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
    return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Complex trace(const Matrix& m) {
    if (m.rows() != m.cols())
        throw NotSquare("trace: rectangular input");
    return m.trace();
}

Matrix adjoint(const Matrix& m) { return m.adjoint(); }

double frobenius_distance(const Matrix& a, const Matrix& b) {
    return (a - b).norm();
}

Matrix partial_trace_second(const Matrix& m, int dim_a, int dim_b) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimMismatch("partial_trace_second: shape");
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j)
            for (int k = 0; k < dim_b; ++k)
                out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
}

Matrix partial_trace_first(const Matrix& m, int dim_a, int dim_b) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimMismatch("partial_trace_first: shape");
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int k = 0; k < dim_b; ++k)
        for (int l = 0; l < dim_b; ++l)
            for (int i = 0; i < dim_a; ++i)
                out(k, l) += m(i * dim_b + k, i * dim_b + l);
    return out;
}

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            g(i, j) = Complex(gauss(rng), gauss(rng));

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        double mag = std::abs(d);
        q.col(i) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace qmi
