#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmi/linalg.hpp"

#include <cmath>

using namespace qmi;

namespace {

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return (g + g.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("hermitian_eig on diagonal and Pauli-X inputs") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.5;
    d(1, 1) = 0.5;
    HermitianEig eig = hermitian_eig(d);
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.5));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.5));

    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    eig = hermitian_eig(x);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0));
    // |+> and |-> up to the phase convention.
    CHECK(std::abs(eig.eigenvectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(Matrix::Zero(2, 3)), NotSquare);
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("round trip on a 6x6 Hermitian built from seed 7") {
    // Oracle construction: M = V D V^dagger from a known unitary and diagonal.
    std::mt19937_64 rng(7);
    Matrix v = haar_unitary(6, rng);
    Matrix d = Matrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) d(i, i) = 1.0 + 0.5 * i;
    Matrix m = v * d * v.adjoint();
    m = (m + m.adjoint()) / 2.0;

    HermitianEig eig = hermitian_eig(m);
    Matrix recon = Matrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i)
        recon += eig.eigenvalues[i] *
                 (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
    CHECK((recon - m).norm() < 1e-9);
}

TEST_CASE("eigendecomposition round trip, dims 2-8, 100 seeds") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        int dim = 2 + static_cast<int>(seed % 7);
        Matrix m = random_hermitian(dim, rng);
        HermitianEig eig = hermitian_eig(m);
        Matrix recon = Matrix::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
            recon += eig.eigenvalues[i] *
                     (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
        REQUIRE((recon - m).norm() < 1e-9);
        REQUIRE((eig.eigenvectors.adjoint() * eig.eigenvectors -
                 Matrix::Identity(dim, dim))
                    .norm() < 1e-10);
    }
}

TEST_CASE("matrix_log_on_support") {
    CHECK(matrix_log_on_support(Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));

    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = std::exp(1.0);
    d(1, 1) = 1.0;
    Matrix l = matrix_log_on_support(d);
    CHECK(l(0, 0).real() == doctest::Approx(1.0));
    CHECK(l(1, 1).real() == doctest::Approx(0.0));
    CHECK(l(2, 2).real() == doctest::Approx(0.0));

    Matrix half = 0.5 * Matrix::Identity(2, 2);
    CHECK(matrix_log_on_support(half)(0, 0).real() == doctest::Approx(std::log(0.5)));

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(matrix_log_on_support(neg), NegativeEigenvalue);
}

TEST_CASE("log and exp invert each other on support") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        int dim = 2 + static_cast<int>(seed % 4);
        Matrix l = random_hermitian(dim, rng);
        Matrix back = matrix_log_on_support(matrix_exp_hermitian(l));
        REQUIRE((back - l).norm() < 1e-8);
    }
}

TEST_CASE("tensor product basics") {
    CHECK((tensor(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) -
           Matrix::Identity(4, 4))
              .norm() == doctest::Approx(0.0));

    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    b(1, 1) = 1.0;
    Matrix t = tensor(a, b);
    CHECK(t(1, 1).real() == doctest::Approx(1.0));
    CHECK(t.trace().real() == doctest::Approx(1.0));

    // Entry (i*3+k, j*3+l) = A_ij * B_kl.
    std::mt19937_64 rng(3);
    Matrix a2 = random_hermitian(2, rng), b3 = random_hermitian(3, rng);
    Matrix t23 = tensor(a2, b3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    REQUIRE(std::abs(t23(i * 3 + k, j * 3 + l) - a2(i, j) * b3(k, l)) <
                            1e-14);
}

TEST_CASE("tensor associativity and trace multiplicativity") {
    std::mt19937_64 rng(11);
    Matrix a = random_hermitian(2, rng), b = random_hermitian(3, rng),
           c = random_hermitian(2, rng);
    CHECK((tensor(tensor(a, b), c) - tensor(a, tensor(b, c))).norm() ==
          doctest::Approx(0.0));
    Complex lhs = trace(tensor(a, b));
    Complex rhs = trace(a) * trace(b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
}

TEST_CASE("trace, adjoint, frobenius_distance") {
    CHECK(trace(Matrix::Identity(4, 4)).real() == doctest::Approx(4.0));
    CHECK_THROWS_AS(trace(Matrix::Zero(2, 3)), NotSquare);

    std::mt19937_64 rng(5);
    Matrix m = random_hermitian(3, rng);
    CHECK((adjoint(adjoint(m)) - m).norm() == doctest::Approx(0.0));
    CHECK(frobenius_distance(m, m) == doctest::Approx(0.0));
}

TEST_CASE("partial traces recover the factors of a product state") {
    std::mt19937_64 rng(9);
    Matrix a = random_hermitian(2, rng);
    Matrix b = random_hermitian(3, rng);
    Matrix t = tensor(a, b);
    CHECK((partial_trace_second(t, 2, 3) - b.trace() * a).norm() < 1e-12);
    CHECK((partial_trace_first(t, 2, 3) - a.trace() * b).norm() < 1e-12);
}

TEST_CASE("haar_unitary is unitary and deterministic") {
    std::mt19937_64 rng1(42), rng2(42);
    Matrix u1 = haar_unitary(4, rng1), u2 = haar_unitary(4, rng2);
    CHECK((u1 - u2).norm() == doctest::Approx(0.0));
    CHECK((u1.adjoint() * u1 - Matrix::Identity(4, 4)).norm() < 1e-12);
}
