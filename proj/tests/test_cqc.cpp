#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmi/cqc.hpp"

#include <cmath>

using namespace qmi;

namespace {

QuantumCoding basis_coding(int dim) {
    std::vector<DensityMatrix> codes;
    for (int k = 0; k < dim; ++k) codes.push_back(pure_state(Vector::Unit(dim, k)));
    return make_coding(std::move(codes));
}

RealVector uniform(int n) { return RealVector::Constant(n, 1.0 / n); }

}  // namespace

TEST_CASE("build_pipeline validates the stage dimensions") {
    CHECK_NOTHROW(
        build_pipeline(basis_coding(2), identity_channel(2), basis_decoding(2)));
    CHECK_THROWS_AS(
        build_pipeline(basis_coding(3), identity_channel(2), basis_decoding(2)),
        DimMismatch);
    CHECK_THROWS_AS(
        build_pipeline(basis_coding(2), identity_channel(2), basis_decoding(3)),
        DimMismatch);
}

TEST_CASE("make_ensemble validates distributions") {
    RealVector mu(2);
    mu << 0.25, 0.75;
    MessageEnsemble e = make_ensemble(mu);
    CHECK(e.n_messages == 2);
    RealVector bad(2);
    bad << 0.25, 0.25;
    CHECK_THROWS_AS(make_ensemble(bad), NotDistribution);
}

TEST_CASE("trace_pipeline exposes consistent stages") {
    QuantumChannel ch = channel_zoo("amplitude_damping", {0.3});
    CqcPipeline pipe = build_pipeline(basis_coding(2), ch, basis_decoding(2));
    RealVector mu(2);
    mu << 0.4, 0.6;
    PipelineTrace tr = trace_pipeline(pipe, make_ensemble(mu));

    CHECK(frobenius_distance(tr.coded.matrix,
                             coding_channel(pipe.coding, mu).matrix) < 1e-12);
    CHECK(frobenius_distance(tr.transmitted.matrix,
                             apply(ch, tr.coded).matrix) < 1e-12);
    CHECK((tr.decoded - decode(pipe.decoding, tr.transmitted)).norm() < 1e-12);
    CHECK(tr.decoded.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("induced classical channel columns are the per-symbol decodings") {
    QuantumChannel ch = channel_zoo("depolarizing", {0.35});
    CqcPipeline pipe = build_pipeline(basis_coding(2), ch, basis_decoding(2));
    ClassicalChannel t = induced_classical_channel(pipe);
    REQUIRE(t.n_in == 2);
    REQUIRE(t.n_out == 2);
    for (int k = 0; k < 2; ++k) {
        RealVector col = decode(pipe.decoding, apply(ch, pipe.coding.code_states[k]));
        REQUIRE((t.matrix.col(k) - col).norm() < 1e-12);
        REQUIRE(t.matrix.col(k).sum() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("noiseless orthogonal pipeline transmits H(mu)") {
    CqcPipeline pipe =
        build_pipeline(basis_coding(3), identity_channel(3), basis_decoding(3));
    RealVector mu(3);
    mu << 0.5, 0.3, 0.2;
    CHECK(cqc_mutual(pipe, mu).nats == doctest::Approx(shannon(mu).nats).epsilon(1e-10));
    CHECK(cqc_mutual(pipe, uniform(3)).nats == doctest::Approx(std::log(3.0)));
}

TEST_CASE("bit flip pipeline realizes the binary symmetric channel") {
    // Oracle: basis codes + bit flip + basis decoding induce the stochastic
    // matrix [[1-p, p], [p, 1-p]]; at uniform input the mutual entropy is the
    // textbook ln 2 - h(p).
    double p = 0.1;
    CqcPipeline pipe = build_pipeline(basis_coding(2), channel_zoo("bitflip", {p}),
                                      basis_decoding(2));
    ClassicalChannel t = induced_classical_channel(pipe);
    CHECK(t.matrix(0, 0) == doctest::Approx(1 - p));
    CHECK(t.matrix(1, 0) == doctest::Approx(p));

    double h = -p * std::log(p) - (1 - p) * std::log(1 - p);
    CHECK(cqc_mutual(pipe, uniform(2)).nats ==
          doctest::Approx(std::log(2.0) - h).epsilon(1e-10));
}

TEST_CASE("cqc mutual equals the classical mutual of the induced channel") {
    const char* names[] = {"depolarizing", "bitflip", "amplitude_damping", "phaseflip"};
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        QuantumChannel ch = channel_zoo(names[seed % 4], {unif(rng)});

        std::vector<DensityMatrix> codes;
        for (int k = 0; k < 2; ++k) codes.push_back(random_density(2, 1, seed * 10 + k));
        CqcPipeline pipe = build_pipeline(make_coding(codes), ch, basis_decoding(2));

        RealVector mu(2);
        double a = 0.1 + 0.8 * unif(rng);
        mu << a, 1 - a;
        double direct = cqc_mutual(pipe, mu).nats;
        double via = classical_mutual(mu, induced_classical_channel(pipe)).nats;
        REQUIRE(std::abs(direct - via) < 1e-10);
        REQUIRE(direct >= -1e-12);
        REQUIRE(direct <= shannon(mu).nats + 1e-10);
    }
}

TEST_CASE("decoding in a mismatched basis loses information") {
    Matrix hadamard(2, 2);
    hadamard << 1, 1, 1, -1;
    hadamard /= std::sqrt(2.0);
    std::vector<Matrix> povm = {hadamard.col(0) * hadamard.col(0).adjoint(),
                                hadamard.col(1) * hadamard.col(1).adjoint()};
    MeasurementDecoding conjugate = make_decoding(2, povm);
    CqcPipeline pipe = build_pipeline(basis_coding(2), identity_channel(2), conjugate);
    // Each code state decodes to (1/2, 1/2): the induced channel is constant.
    CHECK(cqc_mutual(pipe, uniform(2)).nats == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cqc mutual never exceeds the Holevo quantity of the coding") {
    const char* names[] = {"depolarizing", "amplitude_damping"};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        QuantumChannel ch = channel_zoo(names[seed % 2], {unif(rng)});
        std::vector<DensityMatrix> codes = {random_density(2, 1, seed * 3),
                                            random_density(2, 1, seed * 3 + 1)};
        QuantumCoding coding = make_coding(codes);
        CqcPipeline pipe = build_pipeline(coding, ch, basis_decoding(2));
        RealVector mu(2);
        double a = 0.2 + 0.6 * unif(rng);
        mu << a, 1 - a;
        double holevo = shannon_form(mu, coding, ch).nats;
        REQUIRE(cqc_mutual(pipe, mu).nats <= holevo + 1e-9);
    }
}
