#include "qmi/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qmi {

namespace {

Complex parse_complex(const Json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ParseError(where + ": expected number or [re, im]");
}

Json dump_complex(Complex z) {
    if (z.imag() == 0.0) return Json(z.real());
    return Json::array({z.real(), z.imag()});
}

Json dump_matrix(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(dump_complex(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string format_sig(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Matrix parse_matrix(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ParseError(where + ": expected nested row-major array");
    const std::size_t rows = j.size(), cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError(where + ": ragged row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = parse_complex(j[r][c], where + "[" + std::to_string(r) + "][" +
                                                 std::to_string(c) + "]");
    }
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (!std::isfinite(m(i).real()) || !std::isfinite(m(i).imag()))
            throw ValidationError(where + ": non-finite entry");
    return m;
}

RealVector parse_distribution(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected array of probabilities");
    RealVector p(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ParseError(where + ": entry " + std::to_string(i));
        p[i] = j[i].get<double>();
    }
    try {
        check_distribution(p, 1e-10);
    } catch (const NotDistribution& e) {
        throw ValidationError(where + ": " + e.what());
    }
    return p;
}

DensityMatrix parse_state(const Json& j, const std::string& where) {
    try {
        if (j.contains("matrix")) return validate_density(parse_matrix(j["matrix"], where));
        if (j.contains("diag")) {
            RealVector p = parse_distribution(j["diag"], where + ".diag");
            return diagonal_state(p);
        }
        if (j.contains("random")) {
            const Json& r = j["random"];
            return random_density(r.at("dim").get<int>(), r.at("rank").get<int>(),
                                  r.value("seed", 1));
        }
        if (j.contains("pure")) {
            Json col = j["pure"];
            Vector psi(col.size());
            for (std::size_t i = 0; i < col.size(); ++i)
                psi[i] = parse_complex(col[i], where + ".pure");
            return pure_state(psi);
        }
        if (j.contains("maximally_mixed"))
            return maximally_mixed(j["maximally_mixed"].get<int>());
    } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected matrix / diag / random / pure / maximally_mixed");
}

QuantumChannel parse_channel(const Json& j, const std::string& where) {
    try {
        if (j.contains("zoo")) {
            std::vector<double> params;
            if (j.contains("params"))
                for (const Json& p : j["params"]) params.push_back(p.get<double>());
            return channel_zoo(j["zoo"].get<std::string>(), params);
        }
        if (j.contains("kraus")) {
            std::vector<Matrix> kraus;
            for (std::size_t i = 0; i < j["kraus"].size(); ++i)
                kraus.push_back(parse_matrix(j["kraus"][i],
                                             where + ".kraus[" + std::to_string(i) + "]"));
            if (kraus.empty()) throw ParseError(where + ".kraus: empty list");
            int dim_out = j.value("dim_out", static_cast<int>(kraus[0].rows()));
            int dim_in = j.value("dim_in", static_cast<int>(kraus[0].cols()));
            return make_channel(dim_in, dim_out, std::move(kraus));
        }
        if (j.contains("choi")) {
            Matrix choi = parse_matrix(j["choi"], where + ".choi");
            return choi_to_kraus(choi, j.at("dim_in").get<int>(),
                                 j.at("dim_out").get<int>());
        }
        if (j.contains("stochastic")) {
            Matrix t = parse_matrix(j["stochastic"], where + ".stochastic");
            RealMatrix real = t.real();
            return embed_classical(make_classical_channel(real));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected zoo / kraus / choi / stochastic");
}

MeasurementDecoding parse_decoding(const Json& j, const std::string& where) {
    try {
        if (j.contains("basis")) return basis_decoding(j["basis"].get<int>());
        if (j.contains("povm")) {
            std::vector<Matrix> povm;
            for (std::size_t i = 0; i < j["povm"].size(); ++i)
                povm.push_back(parse_matrix(j["povm"][i],
                                            where + ".povm[" + std::to_string(i) + "]"));
            if (povm.empty()) throw ParseError(where + ".povm: empty list");
            return make_decoding(static_cast<int>(povm[0].rows()), std::move(povm));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected basis / povm");
}

Scenario parse_scenario(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    Scenario sc;
    sc.id = j.value("id", "unnamed");
    sc.seed = j.value("seed", 1);
    sc.search.seed = sc.seed;
    if (j.contains("search")) {
        const Json& s = j["search"];
        sc.search.restarts = s.value("restarts", sc.search.restarts);
        sc.search.refine_max_iter = s.value("refine_max_iter", sc.search.refine_max_iter);
        sc.search.refine_step_init = s.value("refine_step_init", sc.search.refine_step_init);
        sc.search.refine_step_min = s.value("refine_step_min", sc.search.refine_step_min);
        sc.search.gap_tol = s.value("gap_tol", sc.search.gap_tol);
        sc.search.m_max = s.value("m_max", sc.search.m_max);
        sc.search.seed = s.value("seed", sc.search.seed);
    }
    if (j.contains("channel")) sc.channel = parse_channel(j["channel"], "channel");
    if (j.contains("state")) sc.state = parse_state(j["state"], "state");
    if (j.contains("sigma")) sc.sigma = parse_state(j["sigma"], "sigma");
    if (j.contains("ensemble"))
        sc.ensemble = parse_distribution(j["ensemble"], "ensemble");
    if (j.contains("coding")) {
        std::vector<DensityMatrix> states;
        const Json& cj = j["coding"].contains("states") ? j["coding"]["states"] : j["coding"];
        for (std::size_t i = 0; i < cj.size(); ++i)
            states.push_back(parse_state(cj[i], "coding[" + std::to_string(i) + "]"));
        sc.coding = make_coding(std::move(states));
    }
    if (j.contains("decoding")) sc.decoding = parse_decoding(j["decoding"], "decoding");
    if (!j.contains("compute") || !j["compute"].is_array() || j["compute"].empty())
        throw ParseError("compute: expected non-empty list of computation names");
    for (const Json& c : j["compute"]) sc.compute.push_back(c.get<std::string>());
    return sc;
}

Json serialize_scenario(const Scenario& sc) {
    Json j;
    j["id"] = sc.id;
    j["seed"] = sc.seed;
    j["search"] = Json{{"restarts", sc.search.restarts},
                       {"refine_max_iter", sc.search.refine_max_iter},
                       {"refine_step_init", sc.search.refine_step_init},
                       {"refine_step_min", sc.search.refine_step_min},
                       {"gap_tol", sc.search.gap_tol},
                       {"m_max", sc.search.m_max},
                       {"seed", sc.search.seed}};
    if (sc.channel) {
        Json kraus = Json::array();
        for (const Matrix& k : sc.channel->kraus) kraus.push_back(dump_matrix(k));
        j["channel"] = Json{{"kraus", kraus},
                            {"dim_in", sc.channel->dim_in},
                            {"dim_out", sc.channel->dim_out}};
    }
    if (sc.state) j["state"] = Json{{"matrix", dump_matrix(sc.state->matrix)}};
    if (sc.sigma) j["sigma"] = Json{{"matrix", dump_matrix(sc.sigma->matrix)}};
    if (sc.ensemble) {
        Json e = Json::array();
        for (Eigen::Index i = 0; i < sc.ensemble->size(); ++i)
            e.push_back((*sc.ensemble)[i]);
        j["ensemble"] = e;
    }
    if (sc.coding) {
        Json states = Json::array();
        for (const DensityMatrix& s : sc.coding->code_states)
            states.push_back(Json{{"matrix", dump_matrix(s.matrix)}});
        j["coding"] = Json{{"states", states}};
    }
    if (sc.decoding) {
        Json povm = Json::array();
        for (const Matrix& m : sc.decoding->povm) povm.push_back(dump_matrix(m));
        j["decoding"] = Json{{"povm", povm}};
    }
    j["compute"] = sc.compute;
    return j;
}

namespace {

const DensityMatrix& need_state(const Scenario& sc, const std::string& op) {
    if (!sc.state) throw ValidationError(op + ": scenario has no state");
    return *sc.state;
}
const QuantumChannel& need_channel(const Scenario& sc, const std::string& op) {
    if (!sc.channel) throw ValidationError(op + ": scenario has no channel");
    return *sc.channel;
}
const QuantumCoding& need_coding(const Scenario& sc, const std::string& op) {
    if (!sc.coding) throw ValidationError(op + ": scenario has no coding");
    return *sc.coding;
}
const RealVector& need_ensemble(const Scenario& sc, const std::string& op) {
    if (!sc.ensemble) throw ValidationError(op + ": scenario has no ensemble");
    return *sc.ensemble;
}
const MeasurementDecoding& need_decoding(const Scenario& sc, const std::string& op) {
    if (!sc.decoding) throw ValidationError(op + ": scenario has no decoding");
    return *sc.decoding;
}

Json weights_witness(const OrthogonalDecomposition& d) {
    Json w = Json::array();
    for (double x : d.weights) w.push_back(format_sig(x));
    return Json{{"weights", w}};
}

Json distribution_witness(const RealVector& p) {
    Json w = Json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) w.push_back(format_sig(p[i]));
    return w;
}

RunRecord execute(const Scenario& sc, const std::string& name) {
    RunRecord rec;
    rec.name = name;
    auto set_value = [&](const EntropyValue& v) {
        rec.infinite = v.is_infinite();
        rec.value_nats = rec.infinite ? 0.0 : v.nats;
    };

    if (name == "von_neumann") {
        set_value(von_neumann(need_state(sc, name)));
        rec.is_exact = true;
    } else if (name == "shannon") {
        set_value(shannon(need_ensemble(sc, name)));
        rec.is_exact = true;
    } else if (name == "relent") {
        if (!sc.sigma) throw ValidationError("relent: scenario has no sigma");
        set_value(umegaki_relative(need_state(sc, name), *sc.sigma));
        rec.is_exact = true;
    } else if (name == "mutual") {
        SearchOutcome out = mutual_entropy(need_state(sc, name), need_channel(sc, name),
                                           sc.search);
        set_value(out.value);
        rec.is_exact = out.is_exact;
        rec.lower_bound = out.lower_bound;
        rec.evaluations = out.evaluations;
        rec.witness = weights_witness(out.witness);
    } else if (name == "pseudo") {
        SearchOutcome out = pseudo_mutual_entropy(need_state(sc, name),
                                                  need_channel(sc, name), sc.search);
        set_value(out.value);
        rec.lower_bound = true;
        rec.evaluations = out.evaluations;
        rec.witness = weights_witness(out.witness);
    } else if (name == "holevo") {
        set_value(holevo_bound(need_ensemble(sc, name), need_coding(sc, name),
                               need_channel(sc, name)));
        rec.is_exact = true;
    } else if (name == "classical_input_mutual") {
        set_value(classical_input_mutual(need_ensemble(sc, name), need_coding(sc, name),
                                         need_channel(sc, name)));
        rec.is_exact = true;
    } else if (name == "shannon_form") {
        set_value(shannon_form(need_ensemble(sc, name), need_coding(sc, name),
                               need_channel(sc, name)));
        rec.is_exact = true;
    } else if (name == "cqc_mutual") {
        CqcPipeline pipe = build_pipeline(need_coding(sc, name), need_channel(sc, name),
                                          need_decoding(sc, name));
        set_value(cqc_mutual(pipe, need_ensemble(sc, name)));
        rec.is_exact = true;
    } else if (name == "cqc_capacity") {
        CqcPipeline pipe = build_pipeline(need_coding(sc, name), need_channel(sc, name),
                                          need_decoding(sc, name));
        CapacityReport r = cqc_capacity(
            pipe, DistributionSet::full_simplex(pipe.coding.n_symbols), sc.search);
        set_value(r.value);
        rec.is_exact = r.is_exact;
        rec.lower_bound = r.lower_bound;
        rec.evaluations = r.evaluations;
        rec.witness = distribution_witness(r.witness_distribution);
    } else if (name == "quantum_capacity") {
        const QuantumChannel& ch = need_channel(sc, name);
        CapacityReport r =
            quantum_capacity(ch, StateSet::full_space(ch.dim_in), sc.search);
        set_value(r.value);
        rec.is_exact = r.is_exact;
        rec.lower_bound = r.lower_bound;
        rec.evaluations = r.evaluations;
    } else if (name == "pseudo_capacity") {
        const QuantumChannel& ch = need_channel(sc, name);
        CapacityReport r =
            pseudo_capacity(ch, StateSet::full_space(ch.dim_in), sc.search);
        set_value(r.value);
        rec.lower_bound = true;
        rec.evaluations = r.evaluations;
    } else if (name == "verify_chains") {
        ChainReport chains = verify_chains(default_chain_battery(4, sc.seed));
        Json checks = Json::array();
        int failures = 0;
        for (const ChainCheck& c : chains.checks) {
            if (!c.pass) ++failures;
            checks.push_back(Json{{"scenario", c.scenario_id},
                                  {"inequality", c.inequality},
                                  {"lhs", format_sig(c.lhs)},
                                  {"rhs", format_sig(c.rhs)},
                                  {"pass", c.pass}});
        }
        rec.value_nats = failures;
        rec.is_exact = true;
        rec.witness = checks;
        if (failures > 0) rec.error = std::to_string(failures) + " chain violations";
    } else {
        throw ValidationError("unknown computation: " + name);
    }
    return rec;
}

}  // namespace

bool RunReport::ok() const {
    for (const RunRecord& r : records)
        if (!r.error.empty()) return false;
    return true;
}

RunReport run(const Scenario& scenario) {
    RunReport report;
    report.scenario_id = scenario.id;
    report.seed = scenario.seed;
    for (const std::string& name : scenario.compute) {
        auto t0 = std::chrono::steady_clock::now();
        RunRecord rec;
        try {
            rec = execute(scenario, name);
        } catch (const Error& e) {
            rec.name = name;
            rec.error = e.what();
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        report.records.push_back(std::move(rec));
    }
    return report;
}

std::string render_machine(const RunReport& report) {
    std::ostringstream out;
    for (const RunRecord& r : report.records) {
        Json line;
        line["scenario"] = report.scenario_id;
        line["seed"] = report.seed;
        line["name"] = r.name;
        line["value_nats"] = r.infinite ? "inf" : format_sig(r.value_nats);
        line["value_bits"] = r.infinite ? "inf" : format_sig(r.value_nats / std::log(2.0));
        line["is_exact"] = r.is_exact;
        line["lower_bound"] = r.lower_bound;
        line["evaluations"] = r.evaluations;
        line["witness"] = r.witness;
        line["error"] = r.error;
        line["wall_ms"] = format_sig(r.wall_ms);
        out << line.dump() << "\n";
    }
    return out.str();
}

std::string render_human(const RunReport& report, bool bits) {
    std::ostringstream out;
    out << "scenario " << report.scenario_id << " (seed " << report.seed << ")\n";
    for (const RunRecord& r : report.records) {
        out << "  " << r.name << ": ";
        if (!r.error.empty()) {
            out << "ERROR " << r.error << "\n";
            continue;
        }
        if (r.infinite)
            out << "inf";
        else
            out << format_sig(bits ? r.value_nats / std::log(2.0) : r.value_nats)
                << (bits ? " bits" : " nats");
        if (r.is_exact) out << " (exact)";
        if (r.lower_bound) out << " (lower bound)";
        out << "\n";
    }
    return out.str();
}

std::vector<ChainScenario> default_chain_battery(int count, std::uint64_t seed) {
    std::vector<ChainScenario> battery;
    const char* zoo_names[] = {"depolarizing", "bitflip", "phaseflip", "amplitude_damping"};
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed * 7919 + i);
        std::uniform_real_distribution<double> unif(0.05, 0.95);

        ChainScenario sc;
        sc.id = "battery-" + std::to_string(i);
        sc.channel = channel_zoo(zoo_names[i % 4], {unif(rng)});
        sc.s0 = StateSet::explicit_list({maximally_mixed(2),
                                         random_density(2, 2, seed * 31 + i),
                                         random_density(2, 1, seed * 37 + i)});

        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<DensityMatrix> codes;
        for (int k = 0; k < 2; ++k) {
            Vector psi(2);
            for (int a = 0; a < 2; ++a) psi[a] = Complex(gauss(rng), gauss(rng));
            codes.push_back(pure_state(psi));
        }
        QuantumCoding coding = make_coding(codes);
        sc.pipeline = build_pipeline(coding, sc.channel, basis_decoding(2));
        sc.p0 = DistributionSet::full_simplex(2);

        QuantumCoding basis_coding = make_coding(
            {pure_state(Vector::Unit(2, 0)), pure_state(Vector::Unit(2, 1))});
        sc.codings = CodingFamily{CodingFamily::Kind::ExplicitList,
                                  {coding, basis_coding}, 2, 2};
        Matrix u = haar_unitary(2, rng);
        std::vector<Matrix> povm{u.col(0) * u.col(0).adjoint(),
                                 u.col(1) * u.col(1).adjoint()};
        sc.decodings = DecodingFamily{
            DecodingFamily::Kind::ExplicitList,
            {basis_decoding(2), make_decoding(2, povm)}, 2};
        sc.search.restarts = 16;
        sc.search.seed = seed + i;
        battery.push_back(std::move(sc));
    }
    return battery;
}

}  // namespace qmi
