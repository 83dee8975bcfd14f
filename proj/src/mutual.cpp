#include "qmi/mutual.hpp"

#include <cmath>

namespace qmi {

namespace {

// exp(i theta H) for the two off-diagonal Hermitian generators on rows (i,j).
Matrix block_rotation(int dim, int i, int j, int type, double theta) {
    Matrix r = Matrix::Identity(dim, dim);
    double c = std::cos(theta), s = std::sin(theta);
    r(i, i) = c;
    r(j, j) = c;
    if (type == 0) {
        r(i, j) = Complex(0, s);
        r(j, i) = Complex(0, s);
    } else {
        r(i, j) = s;
        r(j, i) = -s;
    }
    return r;
}

struct DecompositionValue {
    EntropyValue value;
    int infinite_term = -1;
};

// sum_k w_k S(ch(P_k), out) over pre-applied output state.
DecompositionValue weighted_relative_sum(const std::vector<double>& weights,
                                         const std::vector<Matrix>& parts,
                                         const QuantumChannel& ch,
                                         const DensityMatrix& out,
                                         long& evaluations) {
    double total = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] <= 1e-12) continue;
        DensityMatrix part{static_cast<int>(parts[k].rows()), parts[k]};
        EntropyValue term = umegaki_relative(apply(ch, part), out);
        ++evaluations;
        if (term.is_infinite())
            return {EntropyValue::infinity(term.borderline), static_cast<int>(k)};
        total += weights[k] * term.nats;
    }
    if (total < 0.0 && total > -1e-10) total = 0.0;
    return {EntropyValue{total}, -1};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint64_t out[2];
    std::uint32_t words[4];
    seq.generate(words, words + 4);
    out[0] = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    out[1] = (static_cast<std::uint64_t>(words[2]) << 32) | words[3];
    return out[0] ^ out[1];
}

}  // namespace

CompoundState compound_state(const DensityMatrix& rho, const QuantumChannel& ch,
                             const SchattenDecomposition& e) {
    if (ch.dim_in != rho.dim)
        throw DimMismatch("compound_state: channel dim_in " + std::to_string(ch.dim_in) +
                          " vs state dim " + std::to_string(rho.dim));
    double err = frobenius_distance(reconstruct(e), rho.matrix);
    if (err > 1e-9)
        throw DecompositionMismatch("compound_state: reconstruction error " +
                                    std::to_string(err));
    Matrix sigma = Matrix::Zero(rho.dim * ch.dim_out, rho.dim * ch.dim_out);
    for (std::size_t k = 0; k < e.weights.size(); ++k) {
        DensityMatrix part{rho.dim, e.projectors[k]};
        sigma += e.weights[k] * tensor(e.projectors[k], apply(ch, part).matrix);
    }
    return CompoundState{DensityMatrix{rho.dim * ch.dim_out, sigma}, e};
}

EntropyValue mutual_for_decomposition(const DensityMatrix& rho,
                                      const QuantumChannel& ch,
                                      const SchattenDecomposition& e) {
    double err = frobenius_distance(reconstruct(e), rho.matrix);
    if (err > 1e-9)
        throw DecompositionMismatch("mutual_for_decomposition: reconstruction error " +
                                    std::to_string(err));
    DensityMatrix out = apply(ch, rho);
    long evals = 0;
    return weighted_relative_sum(e.weights, e.projectors, ch, out, evals).value;
}

MutualCrossCheck mutual_for_decomposition_verified(const DensityMatrix& rho,
                                                   const QuantumChannel& ch,
                                                   const SchattenDecomposition& e) {
    MutualCrossCheck check;
    check.per_term = mutual_for_decomposition(rho, ch, e);
    CompoundState compound = compound_state(rho, ch, e);
    Matrix product = tensor(rho.matrix, apply(ch, rho).matrix);
    check.compound =
        relative_entropy_positive(compound.state.matrix, product);
    return check;
}

EntropyValue mutual_orthogonal(const DensityMatrix& rho, const QuantumChannel& ch,
                               const OrthogonalDecomposition& d) {
    double err = frobenius_distance(reconstruct(d), rho.matrix);
    if (err > 1e-9)
        throw DecompositionMismatch("mutual_orthogonal: reconstruction error " +
                                    std::to_string(err));
    DensityMatrix out = apply(ch, rho);
    double total = 0.0;
    for (std::size_t k = 0; k < d.weights.size(); ++k) {
        if (d.weights[k] <= 1e-12) continue;
        EntropyValue term = umegaki_relative(apply(ch, d.parts[k]), out);
        if (term.is_infinite()) return EntropyValue::infinity(term.borderline);
        total += d.weights[k] * term.nats;
    }
    if (total < 0.0 && total > -1e-10) total = 0.0;
    return EntropyValue{total};
}

SearchOutcome mutual_entropy(const DensityMatrix& rho, const QuantumChannel& ch,
                             const SearchParams& search) {
    if (ch.dim_in != rho.dim)
        throw DimMismatch("mutual_entropy: channel dim_in vs state dim");
    SpectralDecomposition spec = spectral_decomposition(rho, search.gap_tol);
    DensityMatrix out = apply(ch, rho);

    std::vector<int> free_blocks;  // blocks with genuine unitary freedom
    for (std::size_t b = 0; b < spec.multiplicities.size(); ++b)
        if (spec.multiplicities[b] >= 2 && spec.eigenvalues[b] > 1e-12)
            free_blocks.push_back(static_cast<int>(b));

    SearchOutcome outcome;
    auto evaluate = [&](const std::vector<Matrix>& rotations) {
        SchattenDecomposition e = schatten_decomposition(spec, rotations);
        DecompositionValue v =
            weighted_relative_sum(e.weights, e.projectors, ch, out, outcome.evaluations);
        return std::make_pair(v, e);
    };

    auto canonical_rotations = [&]() {
        std::vector<Matrix> rot;
        for (int d : spec.multiplicities) rot.push_back(Matrix::Identity(d, d));
        return rot;
    };

    if (free_blocks.empty()) {
        auto [v, e] = evaluate(canonical_rotations());
        outcome.value = v.value;
        outcome.infinite_term = v.infinite_term;
        outcome.witness = as_orthogonal(e);
        outcome.is_exact = true;
        return outcome;
    }

    double best = -1.0;
    bool best_infinite = false;
    SchattenDecomposition best_e;
    int best_inf_term = -1;

    for (int r = 0; r < std::max(1, search.restarts); ++r) {
        std::mt19937_64 rng(derive_seed(search.seed, static_cast<std::uint64_t>(r)));
        std::vector<Matrix> rot = canonical_rotations();
        if (r > 0)
            for (int b : free_blocks)
                rot[b] = haar_unitary(spec.multiplicities[b], rng);

        auto [v0, e0] = evaluate(rot);
        double cur = v0.value.nats;
        bool cur_inf = v0.value.is_infinite();
        SchattenDecomposition cur_e = e0;
        int cur_inf_term = v0.infinite_term;

        // Coordinate descent over off-diagonal block-unitary generators.
        double step = search.refine_step_init;
        for (int iter = 0; iter < search.refine_max_iter && step >= search.refine_step_min &&
                           !cur_inf;
             ++iter) {
            bool improved = false;
            for (int b : free_blocks) {
                int d = spec.multiplicities[b];
                for (int i = 0; i < d; ++i)
                    for (int j = i + 1; j < d; ++j)
                        for (int type = 0; type < 2; ++type)
                            for (double sign : {1.0, -1.0}) {
                                std::vector<Matrix> trial = rot;
                                trial[b] = rot[b] * block_rotation(d, i, j, type, sign * step);
                                auto [v, e] = evaluate(trial);
                                if (!v.value.is_infinite() && v.value.nats > cur + 1e-13) {
                                    cur = v.value.nats;
                                    cur_e = e;
                                    rot = trial;
                                    improved = true;
                                }
                            }
            }
            if (!improved) step /= 2.0;
        }

        if (cur_inf) {
            best_infinite = true;
            best_inf_term = cur_inf_term;
            best_e = cur_e;
            break;  // infinity dominates every finite value
        }
        if (cur > best) {
            best = cur;
            best_e = cur_e;
        }
    }

    outcome.value = best_infinite ? EntropyValue::infinity() : EntropyValue{best};
    outcome.infinite_term = best_inf_term;
    outcome.witness = as_orthogonal(best_e);
    outcome.lower_bound = true;
    return outcome;
}

EntropyValue classical_input_mutual(const RealVector& lambda,
                                    const QuantumCoding& codes,
                                    const QuantumChannel& ch) {
    if (lambda.size() != codes.n_symbols)
        throw LengthMismatch("classical_input_mutual: weight count");
    check_distribution(lambda);
    DensityMatrix sigma = coding_channel(codes, lambda);
    DensityMatrix out = apply(ch, sigma);
    double total = 0.0;
    for (int k = 0; k < codes.n_symbols; ++k) {
        if (lambda[k] <= 1e-12) continue;
        EntropyValue term = umegaki_relative(apply(ch, codes.code_states[k]), out);
        if (term.is_infinite()) return EntropyValue::infinity(term.borderline);
        total += lambda[k] * term.nats;
    }
    if (total < 0.0 && total > -1e-10) total = 0.0;
    return EntropyValue{total};
}

EntropyValue shannon_form(const RealVector& lambda, const QuantumCoding& codes,
                          const QuantumChannel& ch) {
    if (lambda.size() != codes.n_symbols)
        throw LengthMismatch("shannon_form: weight count");
    check_distribution(lambda);
    DensityMatrix sigma = coding_channel(codes, lambda);
    double total = von_neumann(apply(ch, sigma)).nats;
    for (int k = 0; k < codes.n_symbols; ++k) {
        if (lambda[k] <= 1e-12) continue;
        total -= lambda[k] * von_neumann(apply(ch, codes.code_states[k])).nats;
    }
    if (total < 0.0 && total > -1e-10) total = 0.0;
    return EntropyValue{total};
}

SearchOutcome pseudo_mutual_entropy(const DensityMatrix& rho,
                                    const QuantumChannel& ch,
                                    const SearchParams& search) {
    if (ch.dim_in != rho.dim)
        throw DimMismatch("pseudo_mutual_entropy: channel dim_in vs state dim");
    HermitianEig eig = hermitian_eig(rho.matrix);
    int rank = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
        if (eig.eigenvalues[i] > 1e-12) ++rank;
    int m = search.m_max > 0 ? search.m_max : rho.dim * rho.dim;
    if (m < rank) m = rank;

    // Scaled eigenvector frame: column i = sqrt(mu_i) u_i.
    Matrix frame(rho.dim, rank);
    for (int i = 0; i < rank; ++i)
        frame.col(i) = std::sqrt(eig.eigenvalues[i]) * eig.eigenvectors.col(i);

    DensityMatrix out = apply(ch, rho);
    SearchOutcome outcome;
    outcome.lower_bound = true;

    // Decomposition from an m x rank isometry: |phi_k> = sum_i V_ki sqrt(mu_i) u_i.
    auto evaluate = [&](const Matrix& isometry) {
        std::vector<double> weights;
        std::vector<Matrix> parts;
        for (int k = 0; k < m; ++k) {
            Vector phi = Vector::Zero(rho.dim);
            for (int i = 0; i < rank; ++i) phi += isometry(k, i) * frame.col(i);
            double w = phi.squaredNorm();
            if (w <= 1e-12) continue;
            weights.push_back(w);
            parts.push_back(phi * phi.adjoint() / w);
        }
        DecompositionValue v =
            weighted_relative_sum(weights, parts, ch, out, outcome.evaluations);
        return std::make_tuple(v, weights, parts);
    };

    auto orthonormalize = [&](const Matrix& g) {
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ() * Matrix::Identity(m, rank);
        return q;
    };

    double best = -1.0;
    std::vector<double> best_w;
    std::vector<Matrix> best_parts;

    for (int r = 0; r < std::max(1, search.restarts); ++r) {
        std::mt19937_64 rng(derive_seed(search.seed, 0x9e3779b9ULL + r));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Matrix v;
        if (r == 0) {
            // Canonical embedding: orthogonal eigendecomposition is feasible.
            v = Matrix::Zero(m, rank);
            for (int i = 0; i < rank; ++i) v(i, i) = 1.0;
        } else {
            Matrix g(m, rank);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < rank; ++b) g(a, b) = Complex(gauss(rng), gauss(rng));
            v = orthonormalize(g);
        }

        auto [v0, w0, p0] = evaluate(v);
        if (v0.value.is_infinite()) continue;
        double cur = v0.value.nats;
        std::vector<double> cur_w = w0;
        std::vector<Matrix> cur_p = p0;

        double step = search.refine_step_init;
        for (int iter = 0; iter < search.refine_max_iter && step >= search.refine_step_min;
             ++iter) {
            Matrix g(m, rank);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < rank; ++b) g(a, b) = Complex(gauss(rng), gauss(rng));
            Matrix trial = orthonormalize(v + step * g);
            auto [tv, tw, tp] = evaluate(trial);
            if (!tv.value.is_infinite() && tv.value.nats > cur + 1e-13) {
                cur = tv.value.nats;
                cur_w = tw;
                cur_p = tp;
                v = trial;
            } else {
                step /= 1.5;
            }
        }

        if (cur > best) {
            best = cur;
            best_w = cur_w;
            best_parts = cur_p;
        }
    }

    outcome.value = EntropyValue{best < 0.0 ? 0.0 : best};
    for (std::size_t k = 0; k < best_w.size(); ++k) {
        outcome.witness.weights.push_back(best_w[k]);
        outcome.witness.parts.push_back(DensityMatrix{rho.dim, best_parts[k]});
    }
    return outcome;
}

}  // namespace qmi
