#include "qmi/channels.hpp"

#include <cmath>

namespace qmi {

namespace {

void check_trace_preserving(const QuantumChannel& ch) {
    Matrix sum = Matrix::Zero(ch.dim_in, ch.dim_in);
    for (const Matrix& k : ch.kraus) sum += k.adjoint() * k;
    double defect = (sum - Matrix::Identity(ch.dim_in, ch.dim_in)).norm();
    if (defect > 1e-10)
        throw ValidationError("channel not trace-preserving, defect " +
                              std::to_string(defect));
}

}  // namespace

void check_distribution(const RealVector& p, double tol) {
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p[i] < -tol)
            throw NotDistribution("negative probability " + std::to_string(p[i]));
    if (std::abs(p.sum() - 1.0) > tol)
        throw NotDistribution("probabilities sum to " + std::to_string(p.sum()));
}

QuantumChannel make_channel(int dim_in, int dim_out, std::vector<Matrix> kraus) {
    if (kraus.empty())
        throw ValidationError("channel needs at least one Kraus operator");
    for (const Matrix& k : kraus)
        if (k.rows() != dim_out || k.cols() != dim_in)
            throw DimMismatch("Kraus operator is " + std::to_string(k.rows()) + "x" +
                              std::to_string(k.cols()) + ", expected " +
                              std::to_string(dim_out) + "x" + std::to_string(dim_in));
    QuantumChannel ch{dim_in, dim_out, std::move(kraus)};
    check_trace_preserving(ch);
    return ch;
}

ClassicalChannel make_classical_channel(const RealMatrix& transition) {
    for (Eigen::Index k = 0; k < transition.cols(); ++k) {
        double col = 0.0;
        for (Eigen::Index j = 0; j < transition.rows(); ++j) {
            double p = transition(j, k);
            if (p < 0.0 || p > 1.0)
                throw ValidationError("stochastic entry " + std::to_string(p) +
                                      " outside [0,1]");
            col += p;
        }
        if (std::abs(col - 1.0) > 1e-12)
            throw ValidationError("column " + std::to_string(k) + " sums to " +
                                  std::to_string(col));
    }
    return ClassicalChannel{static_cast<int>(transition.cols()),
                            static_cast<int>(transition.rows()), transition};
}

QuantumCoding make_coding(std::vector<DensityMatrix> code_states) {
    if (code_states.empty())
        throw ValidationError("coding needs at least one code state");
    int dim = code_states.front().dim;
    for (const DensityMatrix& s : code_states)
        if (s.dim != dim)
            throw DimMismatch("code states have mixed dimensions");
    return QuantumCoding{static_cast<int>(code_states.size()), std::move(code_states)};
}

MeasurementDecoding make_decoding(int dim_in, std::vector<Matrix> povm) {
    Matrix sum = Matrix::Zero(dim_in, dim_in);
    for (const Matrix& m : povm) {
        if (m.rows() != dim_in || m.cols() != dim_in)
            throw DimMismatch("POVM element shape");
        Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
        if (solver.eigenvalues().minCoeff() < -1e-12)
            throw ValidationError("POVM element not PSD, eigenvalue " +
                                  std::to_string(solver.eigenvalues().minCoeff()));
        sum += m;
    }
    if ((sum - Matrix::Identity(dim_in, dim_in)).norm() > 1e-10)
        throw ValidationError("POVM does not sum to identity, defect " +
                              std::to_string((sum - Matrix::Identity(dim_in, dim_in)).norm()));
    return MeasurementDecoding{dim_in, std::move(povm)};
}

MeasurementDecoding basis_decoding(int dim) {
    std::vector<Matrix> povm;
    for (int j = 0; j < dim; ++j) {
        Matrix e = Matrix::Zero(dim, dim);
        e(j, j) = 1.0;
        povm.push_back(e);
    }
    return MeasurementDecoding{dim, std::move(povm)};
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
    if (rho.dim != ch.dim_in)
        throw DimMismatch("apply: state dim " + std::to_string(rho.dim) +
                          ", channel dim_in " + std::to_string(ch.dim_in));
    Matrix out = Matrix::Zero(ch.dim_out, ch.dim_out);
    for (const Matrix& k : ch.kraus) out += k * rho.matrix * k.adjoint();
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix{ch.dim_out, out};
}

QuantumChannel compose(const QuantumChannel& after, const QuantumChannel& before) {
    if (before.dim_out != after.dim_in)
        throw DimMismatch("compose: inner dims " + std::to_string(before.dim_out) +
                          " vs " + std::to_string(after.dim_in));
    std::vector<Matrix> kraus;
    kraus.reserve(after.kraus.size() * before.kraus.size());
    for (const Matrix& a : after.kraus)
        for (const Matrix& b : before.kraus)
            kraus.push_back(a * b);
    return make_channel(before.dim_in, after.dim_out, std::move(kraus));
}

QuantumChannel identity_channel(int dim) {
    return QuantumChannel{dim, dim, {Matrix::Identity(dim, dim)}};
}

QuantumChannel embed_classical(const ClassicalChannel& t) {
    std::vector<Matrix> kraus;
    for (int j = 0; j < t.n_out; ++j)
        for (int k = 0; k < t.n_in; ++k) {
            double p = t.matrix(j, k);
            if (p <= 0.0) continue;
            Matrix op = Matrix::Zero(t.n_out, t.n_in);
            op(j, k) = std::sqrt(p);
            kraus.push_back(op);
        }
    return make_channel(t.n_in, t.n_out, std::move(kraus));
}

QuantumChannel choi_to_kraus(const Matrix& choi, int dim_in, int dim_out) {
    if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out)
        throw DimMismatch("choi_to_kraus: Choi matrix shape");
    HermitianEig eig = hermitian_eig((choi + choi.adjoint()) / 2.0);
    std::vector<Matrix> kraus;
    for (int i = 0; i < dim_in * dim_out; ++i) {
        double lam = eig.eigenvalues[i];
        if (lam < -1e-10)
            throw NotPositive("choi_to_kraus: eigenvalue " + std::to_string(lam));
        if (lam <= 1e-12) continue;
        // Column vector over (in, out) index pairs -> dim_out x dim_in operator.
        Matrix k(dim_out, dim_in);
        for (int a = 0; a < dim_in; ++a)
            for (int b = 0; b < dim_out; ++b)
                k(b, a) = std::sqrt(lam) * eig.eigenvectors(a * dim_out + b, i);
        kraus.push_back(k);
    }
    return make_channel(dim_in, dim_out, std::move(kraus));
}

DensityMatrix coding_channel(const QuantumCoding& coding, const RealVector& lambda) {
    if (lambda.size() != coding.n_symbols)
        throw LengthMismatch("coding_channel: " + std::to_string(lambda.size()) +
                             " weights for " + std::to_string(coding.n_symbols) +
                             " symbols");
    check_distribution(lambda);
    int dim = coding.code_states.front().dim;
    Matrix m = Matrix::Zero(dim, dim);
    for (int k = 0; k < coding.n_symbols; ++k)
        m += lambda[k] * coding.code_states[k].matrix;
    return DensityMatrix{dim, m};
}

RealVector decode(const MeasurementDecoding& dec, const DensityMatrix& rho) {
    if (rho.dim != dec.dim_in)
        throw DimMismatch("decode: state dim " + std::to_string(rho.dim) +
                          ", POVM dim " + std::to_string(dec.dim_in));
    RealVector p(dec.povm.size());
    for (std::size_t j = 0; j < dec.povm.size(); ++j)
        p[j] = (dec.povm[j] * rho.matrix).trace().real();
    return p;
}

QuantumChannel channel_zoo(const std::string& name, const std::vector<double>& params) {
    auto need_prob = [&](std::size_t i) {
        if (params.size() <= i)
            throw ParamOutOfRange(name + ": missing parameter " + std::to_string(i));
        double p = params[i];
        if (p < 0.0 || p > 1.0)
            throw ParamOutOfRange(name + ": parameter " + std::to_string(p) +
                                  " outside [0,1]");
        return p;
    };

    Matrix id2 = Matrix::Identity(2, 2);
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;

    if (name == "identity") {
        int dim = params.empty() ? 2 : static_cast<int>(params[0]);
        if (dim < 1) throw ParamOutOfRange("identity: dim " + std::to_string(dim));
        return identity_channel(dim);
    }
    if (name == "depolarizing") {
        double p = need_prob(0);
        std::vector<Matrix> kraus{std::sqrt(1.0 - 3.0 * p / 4.0) * id2,
                                  std::sqrt(p / 4.0) * x, std::sqrt(p / 4.0) * y,
                                  std::sqrt(p / 4.0) * z};
        return make_channel(2, 2, std::move(kraus));
    }
    if (name == "bitflip") {
        double p = need_prob(0);
        return make_channel(2, 2, {std::sqrt(1.0 - p) * id2, std::sqrt(p) * x});
    }
    if (name == "phaseflip") {
        double p = need_prob(0);
        return make_channel(2, 2, {std::sqrt(1.0 - p) * id2, std::sqrt(p) * z});
    }
    if (name == "amplitude_damping") {
        double g = need_prob(0);
        Matrix k0(2, 2), k1(2, 2);
        k0 << 1, 0, 0, std::sqrt(1.0 - g);
        k1 << 0, std::sqrt(g), 0, 0;
        return make_channel(2, 2, {k0, k1});
    }
    if (name == "dephasing") {
        // Diagonal-preserving mixing toward the diagonal, any dimension.
        double p = need_prob(0);
        int dim = params.size() > 1 ? static_cast<int>(params[1]) : 2;
        std::vector<Matrix> kraus{std::sqrt(1.0 - p) * Matrix::Identity(dim, dim)};
        for (int j = 0; j < dim; ++j) {
            Matrix e = Matrix::Zero(dim, dim);
            e(j, j) = std::sqrt(p);
            kraus.push_back(e);
        }
        return make_channel(dim, dim, std::move(kraus));
    }
    if (name == "depolarizing_to_mixed") {
        // rho -> (1-p) rho + p I/d; p = 1 is the completely depolarizing channel.
        double p = need_prob(0);
        int dim = params.size() > 1 ? static_cast<int>(params[1]) : 2;
        std::vector<Matrix> kraus{std::sqrt(1.0 - p) * Matrix::Identity(dim, dim)};
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                Matrix e = Matrix::Zero(dim, dim);
                e(a, b) = std::sqrt(p / dim);
                kraus.push_back(e);
            }
        return make_channel(dim, dim, std::move(kraus));
    }
    throw UnknownChannel("channel_zoo: " + name);
}

}  // namespace qmi
