#include "qmi/cqc.hpp"

namespace qmi {

CqcPipeline build_pipeline(const QuantumCoding& codes, const QuantumChannel& ch,
                           const MeasurementDecoding& dec) {
    int code_dim = codes.code_states.front().dim;
    if (code_dim != ch.dim_in)
        throw DimMismatch("build_pipeline: coding->channel, code dim " +
                          std::to_string(code_dim) + " vs channel dim_in " +
                          std::to_string(ch.dim_in));
    if (ch.dim_out != dec.dim_in)
        throw DimMismatch("build_pipeline: channel->decoding, channel dim_out " +
                          std::to_string(ch.dim_out) + " vs POVM dim " +
                          std::to_string(dec.dim_in));
    return CqcPipeline{codes, ch, dec};
}

MessageEnsemble make_ensemble(const RealVector& probabilities) {
    check_distribution(probabilities);
    return MessageEnsemble{static_cast<int>(probabilities.size()), probabilities};
}

PipelineTrace trace_pipeline(const CqcPipeline& pipe, const MessageEnsemble& ensemble) {
    if (ensemble.n_messages != pipe.coding.n_symbols)
        throw LengthMismatch("trace_pipeline: " + std::to_string(ensemble.n_messages) +
                             " messages for " + std::to_string(pipe.coding.n_symbols) +
                             " symbols");
    PipelineTrace trace;
    trace.input = ensemble.probabilities;
    trace.coded = coding_channel(pipe.coding, ensemble.probabilities);
    trace.transmitted = apply(pipe.channel, trace.coded);
    trace.decoded = decode(pipe.decoding, trace.transmitted);
    return trace;
}

ClassicalChannel induced_classical_channel(const CqcPipeline& pipe) {
    int n_out = static_cast<int>(pipe.decoding.povm.size());
    RealMatrix t(n_out, pipe.coding.n_symbols);
    for (int k = 0; k < pipe.coding.n_symbols; ++k) {
        RealVector col = decode(pipe.decoding, apply(pipe.channel, pipe.coding.code_states[k]));
        for (int j = 0; j < n_out; ++j) t(j, k) = std::max(0.0, col[j]);
        t.col(k) /= t.col(k).sum();
    }
    return make_classical_channel(t);
}

EntropyValue cqc_mutual(const CqcPipeline& pipe, const RealVector& lambda) {
    if (lambda.size() != pipe.coding.n_symbols)
        throw LengthMismatch("cqc_mutual: weight count " + std::to_string(lambda.size()) +
                             " vs " + std::to_string(pipe.coding.n_symbols) + " symbols");
    check_distribution(lambda);
    DensityMatrix sigma = coding_channel(pipe.coding, lambda);
    RealVector out = decode(pipe.decoding, apply(pipe.channel, sigma));
    double total = 0.0;
    for (int k = 0; k < pipe.coding.n_symbols; ++k) {
        if (lambda[k] <= 1e-12) continue;
        RealVector pk = decode(pipe.decoding, apply(pipe.channel, pipe.coding.code_states[k]));
        EntropyValue term = classical_relative(pk, out);
        if (term.is_infinite()) return EntropyValue::infinity();
        total += lambda[k] * term.nats;
    }
    if (total < 0.0 && total > -1e-10) total = 0.0;
    return EntropyValue{total};
}

}  // namespace qmi
