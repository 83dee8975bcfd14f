#pragma once

#include "qmi/cqc.hpp"

#include <map>
#include <string>

namespace qmi {

// The set of states prepared for expression of information.
struct StateSet {
    enum class Kind { FullSpace, ExplicitList, DiagonalSimplex };
    Kind kind = Kind::FullSpace;
    int dim = 0;  // FullSpace / DiagonalSimplex
    std::vector<DensityMatrix> members;

    static StateSet full_space(int dim) { return {Kind::FullSpace, dim, {}}; }
    static StateSet diagonal_simplex(int dim) { return {Kind::DiagonalSimplex, dim, {}}; }
    static StateSet explicit_list(std::vector<DensityMatrix> members);
};

// The set of input distributions prepared for a C-Q-C pipeline.
struct DistributionSet {
    enum class Kind { FullSimplex, ExplicitList };
    Kind kind = Kind::FullSimplex;
    int n = 0;  // FullSimplex
    std::vector<RealVector> members;

    static DistributionSet full_simplex(int n) { return {Kind::FullSimplex, n, {}}; }
    static DistributionSet explicit_list(std::vector<RealVector> members);
};

struct CapacityReport {
    EntropyValue value;
    DensityMatrix witness_state;        // set for state-set capacities
    RealVector witness_distribution;    // set for distribution-set capacities
    std::map<std::string, double> components;
    long evaluations = 0;
    bool is_exact = false;
    bool lower_bound = false;
};

// Families over which the coding/decoding capacities take their sup.
struct CodingFamily {
    enum class Kind { ExplicitList, PureConstellation };
    Kind kind = Kind::ExplicitList;
    std::vector<QuantumCoding> members;
    int dim = 0;        // PureConstellation
    int n_symbols = 0;  // PureConstellation
};

struct DecodingFamily {
    enum class Kind { ExplicitList, Projective };
    Kind kind = Kind::ExplicitList;
    std::vector<MeasurementDecoding> members;
    int dim = 0;  // Projective: rank-one projective POVMs of this dimension
};

CapacityReport quantum_capacity(const QuantumChannel& ch, const StateSet& s0,
                                const SearchParams& search = {});

CapacityReport pseudo_capacity(const QuantumChannel& ch, const StateSet& s0,
                               const SearchParams& search = {});

// Concave simplex ascent over the induced classical channel; exact when the
// KKT gradient gap drops below 1e-9.
CapacityReport cqc_capacity(const CqcPipeline& pipe, const DistributionSet& p0,
                            const SearchParams& search = {});

CapacityReport coding_capacity(const QuantumChannel& ch, const MeasurementDecoding& dec,
                               const DistributionSet& p0, const CodingFamily& codings,
                               const SearchParams& search = {});

CapacityReport coding_decoding_capacity(const QuantumChannel& ch,
                                        const DistributionSet& p0,
                                        const CodingFamily& codings,
                                        const DecodingFamily& decodings,
                                        const SearchParams& search = {});

// S(ch(sigma)) - sum_k lambda_k S(ch(sigma_k)).
EntropyValue holevo_bound(const RealVector& lambda, const QuantumCoding& codes,
                          const QuantumChannel& ch);

// One configured scenario for the inequality-chain verifier.
struct ChainScenario {
    std::string id;
    QuantumChannel channel;
    StateSet s0;
    CqcPipeline pipeline;
    DistributionSet p0;
    CodingFamily codings;
    DecodingFamily decodings;
    SearchParams search;
};

struct ChainCheck {
    std::string scenario_id;
    std::string inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct ChainReport {
    std::vector<ChainCheck> checks;
    bool all_pass() const;
};

ChainReport verify_chains(const std::vector<ChainScenario>& instances);

}  // namespace qmi
