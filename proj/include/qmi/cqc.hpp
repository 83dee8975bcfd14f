#pragma once

#include "qmi/mutual.hpp"

namespace qmi {

// Coding, quantum channel, and measurement decoding composed end to end.
struct CqcPipeline {
    QuantumCoding coding;
    QuantumChannel channel;
    MeasurementDecoding decoding;
};

struct MessageEnsemble {
    int n_messages = 0;
    RealVector probabilities;
};

// Stage-by-stage record of one transmission.
struct PipelineTrace {
    RealVector input;
    DensityMatrix coded;
    DensityMatrix transmitted;
    RealVector decoded;
};

CqcPipeline build_pipeline(const QuantumCoding& codes, const QuantumChannel& ch,
                           const MeasurementDecoding& dec);

MessageEnsemble make_ensemble(const RealVector& probabilities);

PipelineTrace trace_pipeline(const CqcPipeline& pipe, const MessageEnsemble& ensemble);

// The pipeline restricted to vertex inputs is an ordinary stochastic matrix:
// column k = decode(dec, ch(sigma_k)).
ClassicalChannel induced_classical_channel(const CqcPipeline& pipe);

// sum_k lambda_k S(decode(ch(sigma_k)), decode(ch(sigma))) -- the mutual
// entropy of the whole transmission process for a classical input.
EntropyValue cqc_mutual(const CqcPipeline& pipe, const RealVector& lambda);

}  // namespace qmi
