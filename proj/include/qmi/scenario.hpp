#pragma once

#include "qmi/capacity.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qmi {

using Json = nlohmann::ordered_json;

// Declarative description of one run: a channel, optional states and
// pipeline pieces, search parameters, and the list of requested computations.
struct Scenario {
    std::string id;
    std::uint64_t seed = 1;
    std::optional<QuantumChannel> channel;
    std::optional<DensityMatrix> state;
    std::optional<DensityMatrix> sigma;
    std::optional<RealVector> ensemble;
    std::optional<QuantumCoding> coding;
    std::optional<MeasurementDecoding> decoding;
    SearchParams search;
    std::vector<std::string> compute;
};

struct RunRecord {
    std::string name;
    double value_nats = 0.0;
    bool infinite = false;
    bool is_exact = false;
    bool lower_bound = false;
    long evaluations = 0;
    Json witness;       // decomposition weights / argmax distribution
    std::string error;  // set when the computation failed
    double wall_ms = 0.0;
};

struct RunReport {
    std::string scenario_id;
    std::uint64_t seed = 1;
    std::vector<RunRecord> records;
    bool ok() const;
};

Scenario parse_scenario(const std::string& text);
Json serialize_scenario(const Scenario& scenario);

RunReport run(const Scenario& scenario);

// Machine report: one record per line, stable key order, 12-significant-digit
// decimals. Timing lives in the trailing wall_ms field.
std::string render_machine(const RunReport& report);
std::string render_human(const RunReport& report, bool bits);

// Reusable pieces for the CLI.
Matrix parse_matrix(const Json& j, const std::string& where);
DensityMatrix parse_state(const Json& j, const std::string& where);
QuantumChannel parse_channel(const Json& j, const std::string& where);
MeasurementDecoding parse_decoding(const Json& j, const std::string& where);
RealVector parse_distribution(const Json& j, const std::string& where);
std::string format_sig(double v);

// Battery of random desk-scale scenarios for the inequality-chain verifier.
std::vector<ChainScenario> default_chain_battery(int count, std::uint64_t seed);

}  // namespace qmi
