#pragma once

#include "qmi/types.hpp"

#include <random>
#include <vector>

namespace qmi {

// Eigendecomposition of a Hermitian matrix. Eigenvalues sorted descending;
// each eigenvector's first component of magnitude > 1e-12 is made real
// positive so decompositions are deterministic.
struct HermitianEig {
    RealVector eigenvalues;  // descending
    Matrix eigenvectors;     // orthonormal columns, column i pairs with eigenvalues[i]
};

HermitianEig hermitian_eig(const Matrix& m);

// log(M) restricted to the support: eigenvalues above zero_tol contribute
// ln(lambda) v v^dagger, the kernel maps to the zero block.
// Throws NegativeEigenvalue if an eigenvalue is below -zero_tol.
Matrix matrix_log_on_support(const Matrix& m, double zero_tol = 1e-12);

// Inverse of matrix_log_on_support on operators supported away from zero.
Matrix matrix_exp_hermitian(const Matrix& m);

// Kronecker product, row-major block convention: A's index is the slow index.
Matrix tensor(const Matrix& a, const Matrix& b);

Complex trace(const Matrix& m);
Matrix adjoint(const Matrix& m);
double frobenius_distance(const Matrix& a, const Matrix& b);

// Partial traces over a bipartite space of dimensions dim_a x dim_b.
Matrix partial_trace_second(const Matrix& m, int dim_a, int dim_b);
Matrix partial_trace_first(const Matrix& m, int dim_a, int dim_b);

bool is_hermitian(const Matrix& m, double tol = 1e-10);

// Haar-distributed random unitary via QR of a complex Ginibre matrix with
// phase-fixed R diagonal. Deterministic given the engine state.
Matrix haar_unitary(int dim, std::mt19937_64& rng);

}  // namespace qmi
