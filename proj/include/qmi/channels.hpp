#pragma once

#include "qmi/states.hpp"

#include <string>
#include <vector>

namespace qmi {

// CPTP map in Kraus form. Kraus operators are dim_out x dim_in and satisfy
// sum K_i^dagger K_i = I on the input space.
struct QuantumChannel {
    int dim_in = 0;
    int dim_out = 0;
    std::vector<Matrix> kraus;
};

// Column-stochastic transition matrix: entry (j,k) = P(output j | input k).
struct ClassicalChannel {
    int n_in = 0;
    int n_out = 0;
    RealMatrix matrix;
};

// Assignment of a quantum state to each classical symbol.
struct QuantumCoding {
    int n_symbols = 0;
    std::vector<DensityMatrix> code_states;
};

// POVM-induced quantum-to-classical channel.
struct MeasurementDecoding {
    int dim_in = 0;
    std::vector<Matrix> povm;
};

QuantumChannel make_channel(int dim_in, int dim_out, std::vector<Matrix> kraus);
ClassicalChannel make_classical_channel(const RealMatrix& transition);
QuantumCoding make_coding(std::vector<DensityMatrix> code_states);
MeasurementDecoding make_decoding(int dim_in, std::vector<Matrix> povm);

// Projective measurement in the computational basis.
MeasurementDecoding basis_decoding(int dim);

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);
QuantumChannel compose(const QuantumChannel& after, const QuantumChannel& before);
QuantumChannel identity_channel(int dim);
QuantumChannel embed_classical(const ClassicalChannel& t);

// Choi matrix (column-stochastic on index pairs) to Kraus form; PSD checked
// at 1e-10. Choi convention: C = sum_{ij} |i><j| (x) ch(|i><j|).
QuantumChannel choi_to_kraus(const Matrix& choi, int dim_in, int dim_out);

// The mixture state sigma = sum_k lambda_k sigma_k.
DensityMatrix coding_channel(const QuantumCoding& coding, const RealVector& lambda);

RealVector decode(const MeasurementDecoding& dec, const DensityMatrix& rho);

// Named fixtures: identity, depolarizing(p), bit-flip(p), phase-flip(p),
// amplitude-damping(gamma). Qubit channels except identity(dim).
QuantumChannel channel_zoo(const std::string& name, const std::vector<double>& params);

void check_distribution(const RealVector& p, double tol = 1e-12);

}  // namespace qmi
