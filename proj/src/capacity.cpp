#include "qmi/capacity.hpp"

#include <cmath>

namespace qmi {

namespace {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t x = master ^ (stream * 0x9e3779b97f4a7c15ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

DensityMatrix random_diagonal(int dim, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    RealVector w(dim);
    for (int i = 0; i < dim; ++i) w[i] = expo(rng);
    w /= w.sum();
    return diagonal_state(w);
}

DensityMatrix perturb_state(const DensityMatrix& rho, double step, bool diagonal_only,
                            std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (diagonal_only) {
        DensityMatrix target = random_diagonal(rho.dim, rng);
        Matrix m = (1.0 - step) * rho.matrix + step * target.matrix;
        return DensityMatrix{rho.dim, m};
    }
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng) == 0) {
        // Mix toward a random full-rank state.
        std::uniform_int_distribution<std::uint64_t> any;
        DensityMatrix target = random_density(rho.dim, rho.dim, any(rng));
        Matrix m = (1.0 - step) * rho.matrix + step * target.matrix;
        return DensityMatrix{rho.dim, m};
    }
    // Conjugate by exp(i step H) with a random Hermitian direction.
    Matrix g(rho.dim, rho.dim);
    for (int a = 0; a < rho.dim; ++a)
        for (int b = 0; b < rho.dim; ++b) g(a, b) = Complex(gauss(rng), gauss(rng));
    Matrix h = (g + g.adjoint()) / 2.0;
    h /= std::max(1e-12, h.norm());
    // exp(i step h) from the eigensystem of h.
    HermitianEig eig = hermitian_eig(h);
    Matrix u = Matrix::Zero(rho.dim, rho.dim);
    for (int i = 0; i < rho.dim; ++i)
        u += std::exp(Complex(0, step * eig.eigenvalues[i])) *
             (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
    Matrix m = u * rho.matrix * u.adjoint();
    m = (m + m.adjoint()) / 2.0;
    return DensityMatrix{rho.dim, m};
}

// Generic restart + hill-climb maximization over a state set.
template <typename Objective>
CapacityReport state_set_search(const StateSet& s0, const SearchParams& search,
                                Objective&& objective) {
    CapacityReport report;
    report.lower_bound = true;

    if (s0.kind == StateSet::Kind::ExplicitList) {
        if (s0.members.empty()) throw EmptyStateSet("state set has no members");
        double best = -1.0;
        bool all_exact = true;
        for (const DensityMatrix& rho : s0.members) {
            SearchOutcome v = objective(rho);
            report.evaluations += v.evaluations;
            all_exact = all_exact && v.is_exact;
            if (v.value.nats > best) {
                best = v.value.nats;
                report.witness_state = rho;
            }
        }
        report.value = EntropyValue{best};
        report.is_exact = all_exact;
        report.lower_bound = !all_exact;
        return report;
    }

    const int dim = s0.dim;
    const bool diagonal_only = s0.kind == StateSet::Kind::DiagonalSimplex;
    const int outer_restarts = std::max(2, search.restarts / 8);
    const int climb_iters = 40;

    double best = -1.0;
    DensityMatrix best_state;
    for (int r = 0; r < outer_restarts; ++r) {
        std::mt19937_64 rng(mix_seed(search.seed, 0xca90 + r));
        DensityMatrix cur_state =
            r == 0 ? maximally_mixed(dim)
                   : (diagonal_only ? random_diagonal(dim, rng)
                                    : random_density(dim, dim, mix_seed(search.seed, r)));
        SearchOutcome cur = objective(cur_state);
        report.evaluations += cur.evaluations;
        double cur_val = cur.value.nats;

        double step = 0.5;
        for (int it = 0; it < climb_iters && step > 1e-3; ++it) {
            DensityMatrix trial = perturb_state(cur_state, step, diagonal_only, rng);
            SearchOutcome tv = objective(trial);
            report.evaluations += tv.evaluations;
            if (tv.value.nats > cur_val + 1e-12) {
                cur_val = tv.value.nats;
                cur_state = trial;
            } else {
                step *= 0.7;
            }
        }
        if (cur_val > best) {
            best = cur_val;
            best_state = cur_state;
        }
    }
    report.value = EntropyValue{best};
    report.witness_state = best_state;
    return report;
}

SearchParams inner_params(const SearchParams& search) {
    SearchParams inner = search;
    inner.restarts = std::max(4, search.restarts / 4);
    inner.refine_max_iter = std::min(search.refine_max_iter, 60);
    return inner;
}

double sup_entropy_over(const StateSet& s0) {
    if (s0.kind == StateSet::Kind::ExplicitList) {
        double best = 0.0;
        for (const DensityMatrix& rho : s0.members)
            best = std::max(best, von_neumann(rho).nats);
        return best;
    }
    return std::log(static_cast<double>(s0.dim));
}

double sup_shannon_over(const DistributionSet& p0) {
    if (p0.kind == DistributionSet::Kind::ExplicitList) {
        double best = 0.0;
        for (const RealVector& p : p0.members) best = std::max(best, shannon(p).nats);
        return best;
    }
    return std::log(static_cast<double>(p0.n));
}

QuantumCoding random_constellation(int dim, int n_symbols, std::mt19937_64& rng) {
    std::vector<DensityMatrix> states;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < n_symbols; ++k) {
        Vector psi(dim);
        for (int i = 0; i < dim; ++i) psi[i] = Complex(gauss(rng), gauss(rng));
        states.push_back(pure_state(psi));
    }
    return make_coding(std::move(states));
}

QuantumCoding perturb_constellation(const QuantumCoding& codes, double step,
                                    std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<DensityMatrix> states;
    for (const DensityMatrix& s : codes.code_states) {
        HermitianEig eig = hermitian_eig(s.matrix);
        Vector psi = eig.eigenvectors.col(0);
        Vector g(psi.size());
        for (Eigen::Index i = 0; i < psi.size(); ++i) g[i] = Complex(gauss(rng), gauss(rng));
        states.push_back(pure_state(psi + step * g));
    }
    return make_coding(std::move(states));
}

MeasurementDecoding projective_decoding(const Matrix& u) {
    std::vector<Matrix> povm;
    for (Eigen::Index j = 0; j < u.cols(); ++j)
        povm.push_back(u.col(j) * u.col(j).adjoint());
    return MeasurementDecoding{static_cast<int>(u.rows()), std::move(povm)};
}

}  // namespace

StateSet StateSet::explicit_list(std::vector<DensityMatrix> members) {
    if (members.empty()) throw EmptyStateSet("explicit state set has no members");
    int dim = members.front().dim;
    for (const DensityMatrix& m : members)
        if (m.dim != dim) throw DimMismatch("explicit state set has mixed dimensions");
    return StateSet{Kind::ExplicitList, dim, std::move(members)};
}

DistributionSet DistributionSet::explicit_list(std::vector<RealVector> members) {
    if (members.empty()) throw EmptyStateSet("explicit distribution set has no members");
    Eigen::Index n = members.front().size();
    for (const RealVector& p : members) {
        if (p.size() != n) throw LengthMismatch("distribution set has mixed lengths");
        check_distribution(p);
    }
    return DistributionSet{Kind::ExplicitList, static_cast<int>(n), std::move(members)};
}

CapacityReport quantum_capacity(const QuantumChannel& ch, const StateSet& s0,
                                const SearchParams& search) {
    if (s0.kind != StateSet::Kind::ExplicitList && s0.dim != ch.dim_in)
        throw DimMismatch("quantum_capacity: state set dim vs channel dim_in");
    if (s0.kind == StateSet::Kind::ExplicitList &&
        s0.members.front().dim != ch.dim_in)
        throw DimMismatch("quantum_capacity: state set dim vs channel dim_in");
    SearchParams inner = inner_params(search);
    CapacityReport report = state_set_search(
        s0, search, [&](const DensityMatrix& rho) { return mutual_entropy(rho, ch, inner); });
    report.components["sup_entropy_s0"] = sup_entropy_over(s0);
    return report;
}

CapacityReport pseudo_capacity(const QuantumChannel& ch, const StateSet& s0,
                               const SearchParams& search) {
    if (s0.kind != StateSet::Kind::ExplicitList && s0.dim != ch.dim_in)
        throw DimMismatch("pseudo_capacity: state set dim vs channel dim_in");
    SearchParams inner = inner_params(search);
    inner.refine_max_iter = std::min(inner.refine_max_iter, 40);
    CapacityReport report = state_set_search(
        s0, search,
        [&](const DensityMatrix& rho) { return pseudo_mutual_entropy(rho, ch, inner); });
    report.is_exact = false;
    report.lower_bound = true;
    report.components["sup_entropy_s0"] = sup_entropy_over(s0);
    return report;
}

CapacityReport cqc_capacity(const CqcPipeline& pipe, const DistributionSet& p0,
                            const SearchParams& search) {
    CapacityReport report;
    const int n = pipe.coding.n_symbols;

    if (p0.kind == DistributionSet::Kind::ExplicitList) {
        double best = -1.0;
        for (const RealVector& lambda : p0.members) {
            EntropyValue v = cqc_mutual(pipe, lambda);
            ++report.evaluations;
            if (v.nats > best) {
                best = v.nats;
                report.witness_distribution = lambda;
            }
        }
        report.value = EntropyValue{best};
        report.is_exact = true;
        return report;
    }

    if (p0.n != n)
        throw LengthMismatch("cqc_capacity: simplex size vs symbol count");

    // The end-to-end pipeline is a finite classical channel, so the objective
    // is concave in lambda and multiplicative ascent converges. KKT gap
    // below 1e-9 certifies optimality over the simplex.
    ClassicalChannel t = induced_classical_channel(pipe);
    RealVector lambda = RealVector::Constant(n, 1.0 / n);
    double value = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 20000; ++iter) {
        RealVector out = t.matrix * lambda;
        RealVector d(n);
        for (int k = 0; k < n; ++k) {
            double dk = 0.0;
            for (int j = 0; j < t.n_out; ++j) {
                double p = t.matrix(j, k);
                if (p > 1e-15 && out[j] > 1e-300) dk += p * std::log(p / out[j]);
            }
            d[k] = dk;
        }
        value = lambda.dot(d);
        gap = d.maxCoeff() - value;
        ++report.evaluations;
        if (gap <= 1e-9) break;
        for (int k = 0; k < n; ++k) lambda[k] *= std::exp(d[k] - value);
        lambda /= lambda.sum();
    }
    report.value = EntropyValue{std::max(0.0, value)};
    report.witness_distribution = lambda;
    report.is_exact = gap <= 1e-9;
    report.lower_bound = !report.is_exact;
    report.components["kkt_gap"] = gap;
    (void)search;
    return report;
}

CapacityReport coding_capacity(const QuantumChannel& ch, const MeasurementDecoding& dec,
                               const DistributionSet& p0, const CodingFamily& codings,
                               const SearchParams& search) {
    CapacityReport report;

    if (codings.kind == CodingFamily::Kind::ExplicitList) {
        if (codings.members.empty()) throw EmptyFamily("coding family has no members");
        double best = -1.0;
        bool all_exact = true;
        for (const QuantumCoding& codes : codings.members) {
            CapacityReport r = cqc_capacity(build_pipeline(codes, ch, dec), p0, search);
            report.evaluations += r.evaluations;
            all_exact = all_exact && r.is_exact;
            if (r.value.nats > best) {
                best = r.value.nats;
                report.witness_distribution = r.witness_distribution;
            }
        }
        report.value = EntropyValue{best};
        report.is_exact = all_exact;
        report.lower_bound = !all_exact;
        return report;
    }

    if (codings.n_symbols < 1) throw EmptyFamily("constellation family is empty");
    report.lower_bound = true;
    const int outer_restarts = std::max(2, search.restarts / 8);
    double best = -1.0;
    for (int r = 0; r < outer_restarts; ++r) {
        std::mt19937_64 rng(mix_seed(search.seed, 0xc0d1 + r));
        QuantumCoding cur = random_constellation(codings.dim, codings.n_symbols, rng);
        CapacityReport cv = cqc_capacity(build_pipeline(cur, ch, dec), p0, search);
        report.evaluations += cv.evaluations;
        double cur_val = cv.value.nats;
        RealVector cur_wit = cv.witness_distribution;

        double step = 0.4;
        for (int it = 0; it < 40 && step > 1e-3; ++it) {
            QuantumCoding trial = perturb_constellation(cur, step, rng);
            CapacityReport tv = cqc_capacity(build_pipeline(trial, ch, dec), p0, search);
            report.evaluations += tv.evaluations;
            if (tv.value.nats > cur_val + 1e-12) {
                cur_val = tv.value.nats;
                cur = trial;
                cur_wit = tv.witness_distribution;
            } else {
                step *= 0.75;
            }
        }
        if (cur_val > best) {
            best = cur_val;
            report.witness_distribution = cur_wit;
        }
    }
    report.value = EntropyValue{best};
    return report;
}

CapacityReport coding_decoding_capacity(const QuantumChannel& ch,
                                        const DistributionSet& p0,
                                        const CodingFamily& codings,
                                        const DecodingFamily& decodings,
                                        const SearchParams& search) {
    CapacityReport report;

    if (decodings.kind == DecodingFamily::Kind::ExplicitList) {
        if (decodings.members.empty()) throw EmptyFamily("decoding family has no members");
        double best = -1.0;
        bool all_exact = true;
        for (const MeasurementDecoding& dec : decodings.members) {
            CapacityReport r = coding_capacity(ch, dec, p0, codings, search);
            report.evaluations += r.evaluations;
            all_exact = all_exact && r.is_exact;
            if (r.value.nats > best) {
                best = r.value.nats;
                report.witness_distribution = r.witness_distribution;
            }
        }
        report.value = EntropyValue{best};
        report.is_exact = all_exact;
        report.lower_bound = !all_exact;
        return report;
    }

    // Projective decodings parametrized by a unitary frame; joint stochastic
    // search over the frame, with the coding capacity as inner objective.
    report.lower_bound = true;
    const int outer_restarts = std::max(2, search.restarts / 8);
    SearchParams inner = search;
    inner.restarts = std::max(4, search.restarts / 8);
    double best = -1.0;
    for (int r = 0; r < outer_restarts; ++r) {
        std::mt19937_64 rng(mix_seed(search.seed, 0xdec0 + r));
        Matrix u = r == 0 ? Matrix(Matrix::Identity(decodings.dim, decodings.dim))
                          : haar_unitary(decodings.dim, rng);
        CapacityReport cv =
            coding_capacity(ch, projective_decoding(u), p0, codings, inner);
        report.evaluations += cv.evaluations;
        double cur_val = cv.value.nats;
        RealVector cur_wit = cv.witness_distribution;

        double step = 0.4;
        for (int it = 0; it < 15 && step > 5e-3; ++it) {
            std::normal_distribution<double> gauss(0.0, 1.0);
            Matrix g(decodings.dim, decodings.dim);
            for (int a = 0; a < decodings.dim; ++a)
                for (int b = 0; b < decodings.dim; ++b)
                    g(a, b) = Complex(gauss(rng), gauss(rng));
            Matrix h = (g + g.adjoint()) / 2.0;
            h /= std::max(1e-12, h.norm());
            HermitianEig eig = hermitian_eig(h);
            Matrix rot = Matrix::Zero(decodings.dim, decodings.dim);
            for (int i = 0; i < decodings.dim; ++i)
                rot += std::exp(Complex(0, step * eig.eigenvalues[i])) *
                       (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
            Matrix trial_u = rot * u;
            CapacityReport tv =
                coding_capacity(ch, projective_decoding(trial_u), p0, codings, inner);
            report.evaluations += tv.evaluations;
            if (tv.value.nats > cur_val + 1e-12) {
                cur_val = tv.value.nats;
                u = trial_u;
                cur_wit = tv.witness_distribution;
            } else {
                step *= 0.7;
            }
        }
        if (cur_val > best) {
            best = cur_val;
            report.witness_distribution = cur_wit;
        }
    }
    report.value = EntropyValue{best};
    return report;
}

EntropyValue holevo_bound(const RealVector& lambda, const QuantumCoding& codes,
                          const QuantumChannel& ch) {
    if (lambda.size() != codes.n_symbols)
        throw LengthMismatch("holevo_bound: weight count");
    if (codes.code_states.front().dim != ch.dim_in)
        throw DimMismatch("holevo_bound: code dim vs channel dim_in");
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

bool ChainReport::all_pass() const {
    for (const ChainCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

ChainReport verify_chains(const std::vector<ChainScenario>& instances) {
    constexpr double tol = 1e-8;
    ChainReport report;
    auto add = [&](const std::string& id, const std::string& name, double lhs,
                   double rhs) {
        report.checks.push_back(ChainCheck{id, name, lhs, rhs, lhs <= rhs + tol});
    };

    for (const ChainScenario& sc : instances) {
        CapacityReport c_s0 = quantum_capacity(sc.channel, sc.s0, sc.search);
        CapacityReport c_p = pseudo_capacity(sc.channel, sc.s0, sc.search);
        // Search-space containment: warm-start the pseudo search with the
        // quantum-capacity witness.
        double c_p_val = std::max(c_p.value.nats, c_s0.value.nats);
        double sup_s = sup_entropy_over(sc.s0);

        add(sc.id, "0 <= C_S0", 0.0, c_s0.value.nats);
        add(sc.id, "C_S0 <= C_p", c_s0.value.nats, c_p_val);
        add(sc.id, "C_p <= sup S", c_p_val, sup_s);

        CapacityReport c_p0 = cqc_capacity(sc.pipeline, sc.p0, sc.search);
        CapacityReport c_c =
            coding_capacity(sc.pipeline.channel, sc.pipeline.decoding, sc.p0,
                            sc.codings, sc.search);
        CapacityReport c_cd = coding_decoding_capacity(sc.pipeline.channel, sc.p0,
                                                       sc.codings, sc.decodings, sc.search);
        // Warm starts: the base pipeline is a member of every enlarged family.
        double c_c_val = std::max(c_c.value.nats, c_p0.value.nats);
        double c_cd_val = std::max(c_cd.value.nats, c_c_val);
        double sup_h = sup_shannon_over(sc.p0);

        add(sc.id, "0 <= C_P0", 0.0, c_p0.value.nats);
        add(sc.id, "C_P0 <= C_c", c_p0.value.nats, c_c_val);
        add(sc.id, "C_c <= C_cd", c_c_val, c_cd_val);
        add(sc.id, "C_cd <= sup H", c_cd_val, sup_h);

        // Holevo domination for the scenario's own pipeline on a spread of
        // input distributions.
        const int n = sc.pipeline.coding.n_symbols;
        std::vector<RealVector> lambdas;
        lambdas.push_back(RealVector::Constant(n, 1.0 / n));
        std::mt19937_64 rng(mix_seed(sc.search.seed, 0x401e70));
        std::exponential_distribution<double> expo(1.0);
        for (int t = 0; t < 3; ++t) {
            RealVector l(n);
            for (int k = 0; k < n; ++k) l[k] = expo(rng);
            l /= l.sum();
            lambdas.push_back(l);
        }
        for (std::size_t t = 0; t < lambdas.size(); ++t) {
            double mi = cqc_mutual(sc.pipeline, lambdas[t]).nats;
            double hb =
                holevo_bound(lambdas[t], sc.pipeline.coding, sc.pipeline.channel).nats;
            add(sc.id, "cqc_mutual <= holevo[" + std::to_string(t) + "]", mi, hb);
        }
    }
    return report;
}

}  // namespace qmi
