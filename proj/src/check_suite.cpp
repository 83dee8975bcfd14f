#include "qmi/check_suite.hpp"

#include "qmi/scenario.hpp"

#include <cmath>
#include <sstream>

namespace qmi {

namespace {

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return (g + g.adjoint()) / 2.0;
}

QuantumChannel random_channel(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    switch (rng() % 3) {
        case 0:
            return channel_zoo("dephasing", {unif(rng), static_cast<double>(dim)});
        case 1:
            return channel_zoo("depolarizing_to_mixed", {unif(rng), static_cast<double>(dim)});
        default:
            return identity_channel(dim);
    }
}

ClassicalChannel random_stochastic(int n, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    RealMatrix t(n, n);
    for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            t(j, k) = expo(rng);
            sum += t(j, k);
        }
        t.col(k) /= sum;
    }
    return make_classical_channel(t);
}

RealVector random_distribution(int n, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    RealVector p(n);
    for (int i = 0; i < n; ++i) p[i] = expo(rng);
    p /= p.sum();
    return p;
}

class Checker {
  public:
    Checker(CheckSuiteReport& report, int dim, std::uint64_t seed)
        : report_(report), dim_(dim), seed_(seed) {}

    void operator()(const std::string& name, bool pass, const std::string& detail) {
        report_.entries.push_back(CheckEntry{name, dim_, seed_, pass,
                                             pass ? std::string() : detail});
    }
    void close(const std::string& name, double lhs, double rhs, double tol) {
        std::ostringstream msg;
        msg << "lhs=" << format_sig(lhs) << " rhs=" << format_sig(rhs);
        (*this)(name, std::abs(lhs - rhs) <= tol, msg.str());
    }
    void below(const std::string& name, double lhs, double rhs, double tol) {
        std::ostringstream msg;
        msg << "lhs=" << format_sig(lhs) << " rhs=" << format_sig(rhs);
        (*this)(name, lhs <= rhs + tol, msg.str());
    }

  private:
    CheckSuiteReport& report_;
    int dim_;
    std::uint64_t seed_;
};

void run_checks(CheckSuiteReport& report, int dim, std::uint64_t seed) {
    Checker check(report, dim, seed);
    std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + dim);

    // linalg: eigendecomposition round trip.
    Matrix h = random_hermitian(dim, rng);
    HermitianEig eig = hermitian_eig(h);
    Matrix recon = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        recon += eig.eigenvalues[i] * (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
    check.close("linalg.eig_round_trip", (recon - h).norm(), 0.0, 1e-9);
    check.close("linalg.orthonormal",
                (eig.eigenvectors.adjoint() * eig.eigenvectors -
                 Matrix::Identity(dim, dim))
                    .norm(),
                0.0, 1e-10);

    // states: sampled Schatten decomposition invariants.
    DensityMatrix rho = random_density(dim, dim, seed + 11);
    SpectralDecomposition spec = spectral_decomposition(rho);
    SchattenDecomposition schatten = sample_schatten(spec, seed + 13);
    check.close("states.schatten_reconstruction",
                frobenius_distance(reconstruct(schatten), rho.matrix), 0.0, 1e-9);
    double weight_sum = 0.0;
    for (double w : schatten.weights) weight_sum += w;
    check.close("states.schatten_weights_sum", weight_sum, 1.0, 1e-12);
    double max_overlap = 0.0;
    for (std::size_t a = 0; a < schatten.projectors.size(); ++a)
        for (std::size_t b = a + 1; b < schatten.projectors.size(); ++b)
            max_overlap = std::max(
                max_overlap, (schatten.projectors[a] * schatten.projectors[b]).norm());
    check.close("states.schatten_orthogonal", max_overlap, 0.0, 1e-9);

    // entropy: S(rho) equals the Shannon entropy of the spectrum.
    RealVector lams(schatten.weights.size());
    for (std::size_t i = 0; i < schatten.weights.size(); ++i) lams[i] = schatten.weights[i];
    check.close("entropy.von_neumann_vs_shannon", von_neumann(rho).nats,
                shannon(lams).nats, 1e-10);

    // entropy: Klein inequality.
    DensityMatrix sigma = random_density(dim, dim, seed + 17);
    EntropyValue rel = umegaki_relative(rho, sigma);
    check.below("entropy.klein_nonneg", 0.0, rel.nats, 1e-10);
    check.close("entropy.klein_zero_self", umegaki_relative(rho, rho).nats, 0.0, 1e-10);

    // entropy: monotonicity under a random channel.
    QuantumChannel mono_ch = random_channel(dim, rng);
    EntropyValue after = umegaki_relative(apply(mono_ch, rho), apply(mono_ch, sigma));
    check.below("entropy.monotonicity", after.nats, rel.nats, 1e-9);

    // entropy: commuting pair reduces to the classical case.
    RealVector p = random_distribution(dim, rng), q = random_distribution(dim, rng);
    check.close("entropy.commuting_reduces_classical",
                umegaki_relative(diagonal_state(p), diagonal_state(q)).nats,
                classical_relative(p, q).nats, 1e-10);

    // entropy: scaling identity on a random pair.
    auto [scaled, predicted] = relative_entropy_scaling_check(rho, sigma, 0.3, 0.7);
    check.close("entropy.scaling_identity", scaled.nats, predicted.nats, 1e-9);

    // channels: composition consistency and trace preservation.
    QuantumChannel ch_a = random_channel(dim, rng), ch_b = random_channel(dim, rng);
    DensityMatrix through = apply(compose(ch_a, ch_b), rho);
    check.close("channels.compose_apply",
                frobenius_distance(through.matrix, apply(ch_a, apply(ch_b, rho)).matrix),
                0.0, 1e-10);
    check.close("channels.trace_preserved", through.matrix.trace().real(), 1.0, 1e-10);

    // mutual: identity-channel law.
    SearchParams search;
    search.seed = seed;
    search.restarts = 8;
    SearchOutcome ident = mutual_entropy(rho, identity_channel(dim), search);
    check.close("mutual.identity_law", ident.value.nats, von_neumann(rho).nats, 1e-8);

    // mutual: Shannon's fundamental inequality for a random channel.
    QuantumChannel ch = random_channel(dim, rng);
    SearchOutcome mi = mutual_entropy(rho, ch, search);
    check.below("mutual.fundamental_lower", 0.0, mi.value.nats, 1e-10);
    check.below("mutual.fundamental_upper", mi.value.nats, von_neumann(rho).nats, 1e-8);

    // mutual: compound-state form agrees with the per-term form.
    MutualCrossCheck cross = mutual_for_decomposition_verified(rho, ch, schatten);
    check.close("mutual.form_equivalence", cross.per_term.nats, cross.compound.nats, 1e-8);

    // mutual: classical reduction.
    ClassicalChannel t = random_stochastic(dim, rng);
    RealVector mu = random_distribution(dim, rng);
    SearchOutcome embedded =
        mutual_entropy(diagonal_state(mu), embed_classical(t), search);
    check.close("mutual.classical_reduction", embedded.value.nats,
                classical_mutual(mu, t).nats, 1e-8);

    // cqc: the pipeline is a classical channel end to end.
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<DensityMatrix> codes;
    for (int k = 0; k < dim; ++k) {
        Vector psi(dim);
        for (int i = 0; i < dim; ++i) psi[i] = Complex(gauss(rng), gauss(rng));
        codes.push_back(pure_state(psi));
    }
    CqcPipeline pipe = build_pipeline(make_coding(codes), ch, basis_decoding(dim));
    RealVector lambda = random_distribution(dim, rng);
    check.close("cqc.induced_channel_mutual", cqc_mutual(pipe, lambda).nats,
                classical_mutual(lambda, induced_classical_channel(pipe)).nats, 1e-10);

    // capacity: Holevo bound dominates the decoded mutual entropy.
    check.below("capacity.holevo_domination", cqc_mutual(pipe, lambda).nats,
                holevo_bound(lambda, pipe.coding, pipe.channel).nats, 1e-8);

    // mutual: I <= I_p (qubits only; the pseudo search is the expensive one).
    if (dim == 2) {
        SearchParams pseudo_search = search;
        pseudo_search.restarts = 4;
        pseudo_search.refine_max_iter = 40;
        SearchOutcome ip = pseudo_mutual_entropy(rho, ch, pseudo_search);
        check.below("mutual.pseudo_dominates", mi.value.nats, ip.value.nats, 1e-8);
    }
}

}  // namespace

int CheckSuiteReport::failures() const {
    int n = 0;
    for (const CheckEntry& e : entries)
        if (!e.pass) ++n;
    return n;
}

CheckSuiteReport check_suite(const std::vector<int>& dims,
                             const std::vector<std::uint64_t>& seeds) {
    CheckSuiteReport report;
    for (int dim : dims)
        for (std::uint64_t seed : seeds) run_checks(report, dim, seed);

    // One chain battery per run, independent of the dim/seed grid.
    ChainReport chains = verify_chains(default_chain_battery(2, seeds.empty() ? 1 : seeds[0]));
    for (const ChainCheck& c : chains.checks) {
        std::ostringstream msg;
        msg << "lhs=" << format_sig(c.lhs) << " rhs=" << format_sig(c.rhs);
        report.entries.push_back(CheckEntry{"chains." + c.scenario_id + "." + c.inequality,
                                            0, 0, c.pass, c.pass ? "" : msg.str()});
    }
    return report;
}

}  // namespace qmi
