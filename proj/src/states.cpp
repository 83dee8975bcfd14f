#include "qmi/states.hpp"

#include <cmath>
#include <numeric>

namespace qmi {

DensityMatrix validate_density(const Matrix& m) {
    if (m.rows() != m.cols())
        throw NotSquare("validate_density: rectangular input");
    if (!is_hermitian(m, 1e-10))
        throw NotHermitian("validate_density: symmetry defect " +
                           std::to_string((m - m.adjoint()).norm()));
    Matrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -1e-12)
        throw NotPositive("validate_density: eigenvalue " + std::to_string(min_eig));
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > 1e-10)
        throw TraceNotOne("validate_density: trace " + std::to_string(tr));
    return DensityMatrix{static_cast<int>(m.rows()), m};
}

DensityMatrix pure_state(const Vector& psi) {
    Vector v = psi / psi.norm();
    return DensityMatrix{static_cast<int>(v.size()), v * v.adjoint()};
}

DensityMatrix diagonal_state(const RealVector& probs) {
    Matrix m = Matrix::Zero(probs.size(), probs.size());
    for (Eigen::Index i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
    return validate_density(m);
}

DensityMatrix maximally_mixed(int dim) {
    return DensityMatrix{dim, Matrix::Identity(dim, dim) / static_cast<double>(dim)};
}

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho, double gap_tol) {
    HermitianEig eig = hermitian_eig(rho.matrix);
    const int n = rho.dim;

    SpectralDecomposition out;
    out.dim = n;
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && eig.eigenvalues[end - 1] - eig.eigenvalues[end] < gap_tol)
            ++end;
        int mult = end - start;
        Matrix basis = eig.eigenvectors.middleCols(start, mult);
        double lam = 0.0;
        for (int i = start; i < end; ++i) lam += eig.eigenvalues[i];
        lam /= mult;
        out.eigenvalues.push_back(lam);
        out.projectors.push_back(basis * basis.adjoint());
        out.multiplicities.push_back(mult);
        out.eigenbases.push_back(basis);
        start = end;
    }
    return out;
}

SchattenDecomposition schatten_decomposition(
    const SpectralDecomposition& spec,
    const std::optional<std::vector<Matrix>>& block_rotations) {
    if (block_rotations && block_rotations->size() != spec.eigenbases.size())
        throw BlockShapeMismatch("schatten_decomposition: " +
                                 std::to_string(block_rotations->size()) +
                                 " rotations for " +
                                 std::to_string(spec.eigenbases.size()) + " blocks");

    SchattenDecomposition out;
    out.dim = spec.dim;
    for (std::size_t b = 0; b < spec.eigenbases.size(); ++b) {
        int d = spec.multiplicities[b];
        Matrix basis = spec.eigenbases[b];
        if (block_rotations) {
            const Matrix& u = (*block_rotations)[b];
            if (u.rows() != d || u.cols() != d)
                throw BlockShapeMismatch("schatten_decomposition: block " +
                                         std::to_string(b) + " is " +
                                         std::to_string(d) + "-dimensional, rotation is " +
                                         std::to_string(u.rows()) + "x" +
                                         std::to_string(u.cols()));
            basis = basis * u;
        }
        double lam = spec.eigenvalues[b];
        if (lam <= 1e-12) continue;  // zero-weight terms contribute nothing
        for (int j = 0; j < d; ++j) {
            out.weights.push_back(lam);
            out.projectors.push_back(basis.col(j) * basis.col(j).adjoint());
        }
    }
    return out;
}

SchattenDecomposition sample_schatten(const SpectralDecomposition& spec,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Matrix> rotations;
    rotations.reserve(spec.multiplicities.size());
    for (int d : spec.multiplicities) {
        if (d == 1)
            rotations.push_back(Matrix::Identity(1, 1));
        else
            rotations.push_back(haar_unitary(d, rng));
    }
    return schatten_decomposition(spec, rotations);
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > dim)
        throw RankOutOfRange("random_density: rank " + std::to_string(rank) +
                             " for dim " + std::to_string(dim));
    std::mt19937_64 rng(seed);
    Matrix u = haar_unitary(dim, rng);

    // Flat Dirichlet over the rank support.
    std::exponential_distribution<double> expo(1.0);
    RealVector w(rank);
    for (int i = 0; i < rank; ++i) w[i] = expo(rng);
    w /= w.sum();

    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 0; i < rank; ++i)
        m += w[i] * (u.col(i) * u.col(i).adjoint());
    m = (m + m.adjoint()) / 2.0;
    return DensityMatrix{dim, m};
}

OrthogonalDecomposition as_orthogonal(const SchattenDecomposition& schatten) {
    OrthogonalDecomposition out;
    for (std::size_t k = 0; k < schatten.weights.size(); ++k) {
        out.weights.push_back(schatten.weights[k]);
        out.parts.push_back(DensityMatrix{schatten.dim, schatten.projectors[k]});
    }
    return out;
}

Matrix reconstruct(const SchattenDecomposition& schatten) {
    Matrix m = Matrix::Zero(schatten.dim, schatten.dim);
    for (std::size_t k = 0; k < schatten.weights.size(); ++k)
        m += schatten.weights[k] * schatten.projectors[k];
    return m;
}

Matrix reconstruct(const OrthogonalDecomposition& decomp) {
    if (decomp.parts.empty()) return Matrix();
    int dim = decomp.parts.front().dim;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < decomp.weights.size(); ++k)
        m += decomp.weights[k] * decomp.parts[k].matrix;
    return m;
}

}  // namespace qmi
