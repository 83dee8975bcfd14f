#pragma once

#include "qmi/linalg.hpp"

#include <optional>
#include <vector>

namespace qmi {

// Hermitian PSD unit-trace matrix. Construct through validate_density so the
// invariants are checked exactly once.
struct DensityMatrix {
    int dim = 0;
    Matrix matrix;
};

// Eigenvalues clustered into degenerate blocks; projectors may have rank > 1.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // distinct, descending
    std::vector<Matrix> projectors;
    std::vector<int> multiplicities;
    // Orthonormal basis of each cluster's eigenspace (dim x multiplicity).
    std::vector<Matrix> eigenbases;
    int dim = 0;
};

// Rank-one refinement of a spectral decomposition; the degenerate eigenvalue
// repeats once per dimension of its block. Non-unique under degeneracy.
struct SchattenDecomposition {
    std::vector<double> weights;
    std::vector<Matrix> projectors;  // rank-one
    int dim = 0;
};

// Finite decomposition of rho into sub-states with pairwise orthogonal ranges.
struct OrthogonalDecomposition {
    std::vector<double> weights;
    std::vector<DensityMatrix> parts;
};

DensityMatrix validate_density(const Matrix& m);

DensityMatrix pure_state(const Vector& psi);
DensityMatrix diagonal_state(const RealVector& probs);
DensityMatrix maximally_mixed(int dim);

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho,
                                             double gap_tol = 1e-8);

// Split each degenerate block into rank-one projectors. A rotation, when
// supplied, re-mixes the intra-block basis; its dimension must match the
// block. Eigenvalues below 1e-12 are dropped.
SchattenDecomposition schatten_decomposition(
    const SpectralDecomposition& spec,
    const std::optional<std::vector<Matrix>>& block_rotations = std::nullopt);

// Haar-random intra-block rotations, deterministic given seed.
SchattenDecomposition sample_schatten(const SpectralDecomposition& spec,
                                      std::uint64_t seed);

DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

// A pure decomposition is in particular an orthogonal one.
OrthogonalDecomposition as_orthogonal(const SchattenDecomposition& schatten);

// Reconstruct sum weights[k] * projectors[k].
Matrix reconstruct(const SchattenDecomposition& schatten);
Matrix reconstruct(const OrthogonalDecomposition& decomp);

}  // namespace qmi
