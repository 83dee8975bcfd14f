#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmi/states.hpp"

#include <cmath>

using namespace qmi;

TEST_CASE("validate_density accepts and rejects per invariant") {
    CHECK_NOTHROW(validate_density(0.5 * Matrix::Identity(2, 2)));

    Matrix bad_trace = Matrix::Zero(2, 2);
    bad_trace(0, 0) = 0.7;
    bad_trace(1, 1) = 0.4;
    CHECK_THROWS_AS(validate_density(bad_trace), TraceNotOne);

    Matrix not_psd = Matrix::Zero(2, 2);
    not_psd(0, 0) = 1.2;
    not_psd(1, 1) = -0.2;
    CHECK_THROWS_AS(validate_density(not_psd), NotPositive);

    Matrix not_herm(2, 2);
    not_herm << 0.5, 0.5, 0.0, 0.5;
    CHECK_THROWS_AS(validate_density(not_herm), NotHermitian);
}

TEST_CASE("spectral_decomposition clusters degenerate eigenvalues") {
    SpectralDecomposition spec = spectral_decomposition(maximally_mixed(3));
    CHECK(spec.eigenvalues.size() == 1);
    CHECK(spec.multiplicities[0] == 3);
    CHECK((spec.projectors[0] - Matrix::Identity(3, 3)).norm() < 1e-12);

    RealVector p(3);
    p << 0.5, 0.3, 0.2;
    spec = spectral_decomposition(diagonal_state(p));
    CHECK(spec.eigenvalues.size() == 3);
    for (const Matrix& proj : spec.projectors)
        CHECK(proj.trace().real() == doctest::Approx(1.0));

    RealVector near(3);
    near << 0.4, 0.4 - 1e-14, 0.2;
    Matrix m = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) m(i, i) = near[i];
    spec = spectral_decomposition(DensityMatrix{3, m}, 1e-8);
    CHECK(spec.eigenvalues.size() == 2);
    CHECK(spec.multiplicities[0] == 2);
}

TEST_CASE("schatten_decomposition honors block rotations") {
    RealVector p(3);
    p << 0.5, 0.3, 0.2;
    DensityMatrix rho = diagonal_state(p);
    SpectralDecomposition spec = spectral_decomposition(rho);

    // Non-degenerate: rotations are 1x1 phases, the decomposition is unique.
    SchattenDecomposition canon = schatten_decomposition(spec);
    SchattenDecomposition sampled = sample_schatten(spec, 99);
    REQUIRE(canon.weights.size() == sampled.weights.size());
    for (std::size_t k = 0; k < canon.weights.size(); ++k)
        CHECK((canon.projectors[k] - sampled.projectors[k]).norm() < 1e-9);

    SpectralDecomposition mixed = spectral_decomposition(maximally_mixed(2));
    SchattenDecomposition basis =
        schatten_decomposition(mixed, std::vector<Matrix>{Matrix::Identity(2, 2)});
    // Identity rotation keeps the computational basis (in either order).
    CHECK(std::abs(basis.projectors[0](0, 1)) < 1e-12);
    CHECK(basis.projectors[0].trace().real() == doctest::Approx(1.0));

    Matrix hadamard(2, 2);
    hadamard << 1, 1, 1, -1;
    hadamard /= std::sqrt(2.0);
    SchattenDecomposition rotated =
        schatten_decomposition(mixed, std::vector<Matrix>{hadamard});
    CHECK(std::abs(rotated.projectors[0](0, 1)) == doctest::Approx(0.5));

    CHECK_THROWS_AS(
        schatten_decomposition(mixed, std::vector<Matrix>{Matrix::Identity(3, 3)}),
        BlockShapeMismatch);
}

TEST_CASE("sample_schatten invariants on degenerate states") {
    for (std::uint64_t seed : {1ULL, 2ULL, 5ULL}) {
        SpectralDecomposition spec = spectral_decomposition(maximally_mixed(4));
        SchattenDecomposition e = sample_schatten(spec, seed);
        REQUIRE(e.weights.size() == 4);
        double sum = 0.0;
        for (double w : e.weights) {
            CHECK(w == doctest::Approx(0.25));
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(frobenius_distance(reconstruct(e), 0.25 * Matrix::Identity(4, 4)) < 1e-9);
        for (std::size_t a = 0; a < e.projectors.size(); ++a) {
            CHECK((e.projectors[a] * e.projectors[a] - e.projectors[a]).norm() < 1e-9);
            for (std::size_t b = a + 1; b < e.projectors.size(); ++b)
                CHECK((e.projectors[a] * e.projectors[b]).norm() < 1e-9);
        }
    }
}

TEST_CASE("schatten weights match the eigenvalue multiset") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        int dim = 2 + static_cast<int>(seed % 5);
        DensityMatrix rho = random_density(dim, dim, seed);
        SpectralDecomposition spec = spectral_decomposition(rho);
        SchattenDecomposition e = sample_schatten(spec, seed + 100);

        std::vector<double> expected;
        for (std::size_t b = 0; b < spec.eigenvalues.size(); ++b)
            for (int j = 0; j < spec.multiplicities[b]; ++j)
                if (spec.eigenvalues[b] > 1e-12) expected.push_back(spec.eigenvalues[b]);
        std::vector<double> got = e.weights;
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        REQUIRE(expected.size() == got.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            REQUIRE(std::abs(got[i] - expected[i]) < 1e-10);

        REQUIRE(frobenius_distance(reconstruct(e), rho.matrix) < 1e-9);
    }
}

TEST_CASE("every schatten decomposition embeds as an orthogonal one") {
    DensityMatrix rho = random_density(4, 4, 8);
    SchattenDecomposition e = sample_schatten(spectral_decomposition(rho), 3);
    OrthogonalDecomposition d = as_orthogonal(e);
    REQUIRE(d.parts.size() == e.weights.size());
    for (const DensityMatrix& part : d.parts) CHECK_NOTHROW(validate_density(part.matrix));
    for (std::size_t a = 0; a < d.parts.size(); ++a)
        for (std::size_t b = a + 1; b < d.parts.size(); ++b)
            CHECK((d.parts[a].matrix * d.parts[b].matrix).norm() < 1e-9);
    CHECK(frobenius_distance(reconstruct(d), rho.matrix) < 1e-9);
}

TEST_CASE("random_density: rank, determinism, validity") {
    DensityMatrix pure = random_density(2, 1, 4);
    HermitianEig eig = hermitian_eig(pure.matrix);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(std::abs(eig.eigenvalues[1]) < 1e-12);

    DensityMatrix full = random_density(4, 4, 3);
    CHECK(full.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_NOTHROW(validate_density(full.matrix));

    DensityMatrix again = random_density(4, 4, 3);
    CHECK((full.matrix - again.matrix).norm() == doctest::Approx(0.0));

    CHECK_THROWS_AS(random_density(2, 3, 1), RankOutOfRange);
    CHECK_THROWS_AS(random_density(2, 0, 1), RankOutOfRange);
}
