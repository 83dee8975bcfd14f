#pragma once

#include "qmi/entropy.hpp"

namespace qmi {

// Correlated state sigma_E = sum_k lambda_k E_k (x) ch(E_k) on input (x) output.
struct CompoundState {
    DensityMatrix state;
    SchattenDecomposition decomposition;
};

struct SearchParams {
    int restarts = 32;
    int refine_max_iter = 200;
    double refine_step_init = 0.1;
    double refine_step_min = 1e-5;
    double gap_tol = 1e-8;
    int m_max = 0;  // 0 -> dim^2 for the pseudo-mutual search
    std::uint64_t seed = 1;
};

// Best value found by a supremum search together with its witness
// decomposition. is_exact means the search domain was a single point;
// lower_bound means the value is a best-found lower bound.
struct SearchOutcome {
    EntropyValue value;
    OrthogonalDecomposition witness;  // pure parts; orthogonal unless pseudo
    long evaluations = 0;
    bool is_exact = false;
    bool lower_bound = false;
    int infinite_term = -1;  // index of the offending term when value is infinite
};

CompoundState compound_state(const DensityMatrix& rho, const QuantumChannel& ch,
                             const SchattenDecomposition& e);

// Per-term form sum_k lambda_k S(ch(E_k), ch(rho)).
EntropyValue mutual_for_decomposition(const DensityMatrix& rho,
                                      const QuantumChannel& ch,
                                      const SchattenDecomposition& e);

// Verification mode: computes both the per-term sum and the compound-state
// relative entropy S(sigma_E, rho (x) ch(rho)); the two must agree.
struct MutualCrossCheck {
    EntropyValue per_term;
    EntropyValue compound;
};
MutualCrossCheck mutual_for_decomposition_verified(const DensityMatrix& rho,
                                                   const QuantumChannel& ch,
                                                   const SchattenDecomposition& e);

// Supremum of mutual_for_decomposition over Schatten decompositions. Exact
// for non-degenerate spectra; Haar restarts plus coordinate-descent
// refinement over intra-block rotations otherwise.
SearchOutcome mutual_entropy(const DensityMatrix& rho, const QuantumChannel& ch,
                             const SearchParams& search = {});

EntropyValue mutual_orthogonal(const DensityMatrix& rho, const QuantumChannel& ch,
                               const OrthogonalDecomposition& d);

// Classical-input reduction: sum_k lambda_k S(ch(sigma_k), ch(sigma)).
EntropyValue classical_input_mutual(const RealVector& lambda,
                                    const QuantumCoding& codes,
                                    const QuantumChannel& ch);

// Shannon form S(ch(sigma)) - sum_k lambda_k S(ch(sigma_k)).
EntropyValue shannon_form(const RealVector& lambda, const QuantumCoding& codes,
                          const QuantumChannel& ch);

// Supremum over finite pure decompositions (not necessarily orthogonal),
// parametrized by isometries mixing the canonical eigenvectors. Always a
// lower bound.
SearchOutcome pseudo_mutual_entropy(const DensityMatrix& rho,
                                    const QuantumChannel& ch,
                                    const SearchParams& search = {});

}  // namespace qmi
