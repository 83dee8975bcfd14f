#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmi/check_suite.hpp"
#include "qmi/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace qmi;

namespace {

const char* kBasicScenario = R"({
  "id": "basic",
  "seed": 5,
  "state": {"diag": [0.5, 0.25, 0.25]},
  "sigma": {"maximally_mixed": 3},
  "channel": {"zoo": "dephasing", "params": [0.4, 3]},
  "compute": ["von_neumann", "relent", "mutual"]
})";

std::string strip_timing(const std::string& machine) {
    std::istringstream in(machine);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        Json j = Json::parse(line);
        j.erase("wall_ms");
        out << j.dump() << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("parse_scenario reads states, channels, and search parameters") {
    Scenario sc = parse_scenario(kBasicScenario);
    CHECK(sc.id == "basic");
    CHECK(sc.seed == 5);
    CHECK(sc.search.seed == 5);
    REQUIRE(sc.state);
    CHECK(sc.state->dim == 3);
    REQUIRE(sc.channel);
    CHECK(sc.channel->dim_in == 3);
    REQUIRE(sc.compute.size() == 3);

    Scenario tuned = parse_scenario(R"({
      "id": "tuned", "search": {"restarts": 4, "seed": 9},
      "state": {"maximally_mixed": 2}, "compute": ["von_neumann"]
    })");
    CHECK(tuned.search.restarts == 4);
    CHECK(tuned.search.seed == 9);
}

TEST_CASE("parse_scenario rejects malformed input") {
    CHECK_THROWS_AS(parse_scenario("{not json"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"id": "x"})"), ParseError);  // no compute
    CHECK_THROWS_AS(
        parse_scenario(R"({"state": {"diag": [0.9, 0.9]}, "compute": ["von_neumann"]})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"channel": {"zoo": "nope"}, "compute": ["mutual"]})"),
        ValidationError);
}

TEST_CASE("parse_state variants") {
    DensityMatrix pure = parse_state(Json::parse(R"({"pure": [1, 0]})"), "t");
    CHECK(pure.matrix(0, 0).real() == doctest::Approx(1.0));

    DensityMatrix rnd1 =
        parse_state(Json::parse(R"({"random": {"dim": 3, "rank": 2, "seed": 4}})"), "t");
    DensityMatrix rnd2 =
        parse_state(Json::parse(R"({"random": {"dim": 3, "rank": 2, "seed": 4}})"), "t");
    CHECK((rnd1.matrix - rnd2.matrix).norm() == doctest::Approx(0.0));

    Json complex_matrix = Json::parse(R"({"matrix": [[0.5, [0, 0.1]], [[0, -0.1], 0.5]]})");
    DensityMatrix m = parse_state(complex_matrix, "t");
    CHECK(m.matrix(0, 1).imag() == doctest::Approx(0.1));
}

TEST_CASE("parse_channel variants agree with each other") {
    QuantumChannel zoo = parse_channel(
        Json::parse(R"({"zoo": "bitflip", "params": [0.2]})"), "t");
    Json kraus_json;
    kraus_json["kraus"] = Json::array();
    for (const Matrix& k : zoo.kraus) {
        Json rows = Json::array();
        for (int i = 0; i < 2; ++i) {
            Json row = Json::array();
            for (int j = 0; j < 2; ++j) row.push_back(k(i, j).real());
            rows.push_back(row);
        }
        kraus_json["kraus"].push_back(rows);
    }
    QuantumChannel raw = parse_channel(kraus_json, "t");
    DensityMatrix rho = random_density(2, 2, 3);
    CHECK(frobenius_distance(apply(zoo, rho).matrix, apply(raw, rho).matrix) < 1e-12);

    QuantumChannel stoch = parse_channel(
        Json::parse(R"({"stochastic": [[0.9, 0.2], [0.1, 0.8]]})"), "t");
    RealVector p(2);
    p << 1.0, 0.0;
    DensityMatrix out = apply(stoch, diagonal_state(p));
    CHECK(out.matrix(0, 0).real() == doctest::Approx(0.9));
}

TEST_CASE("serialize then parse is a round trip") {
    Scenario sc = parse_scenario(kBasicScenario);
    Scenario back = parse_scenario(serialize_scenario(sc).dump());
    CHECK(back.id == sc.id);
    CHECK(back.seed == sc.seed);
    REQUIRE(back.state);
    CHECK(frobenius_distance(back.state->matrix, sc.state->matrix) < 1e-12);
    REQUIRE(back.channel);
    DensityMatrix rho = random_density(3, 3, 8);
    CHECK(frobenius_distance(apply(*back.channel, rho).matrix,
                             apply(*sc.channel, rho).matrix) < 1e-12);
    CHECK(back.compute == sc.compute);
}

TEST_CASE("run executes every requested computation") {
    RunReport report = run(parse_scenario(kBasicScenario));
    REQUIRE(report.records.size() == 3);
    CHECK(report.ok());

    CHECK(report.records[0].name == "von_neumann");
    CHECK(report.records[0].value_nats == doctest::Approx(1.5 * std::log(2.0)));
    CHECK(report.records[1].name == "relent");
    CHECK(report.records[2].name == "mutual");
    CHECK(report.records[2].value_nats >= -1e-10);
}

TEST_CASE("run records errors without aborting the remaining computations") {
    RunReport report = run(parse_scenario(R"({
      "id": "partial",
      "state": {"maximally_mixed": 2},
      "compute": ["mutual", "von_neumann", "no_such_thing"]
    })"));
    REQUIRE(report.records.size() == 3);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.records[0].error.empty());  // mutual without a channel
    CHECK(report.records[1].error.empty());
    CHECK(report.records[1].value_nats == doctest::Approx(std::log(2.0)));
    CHECK_FALSE(report.records[2].error.empty());
}

TEST_CASE("machine reports are deterministic up to timing") {
    Scenario sc = parse_scenario(kBasicScenario);
    std::string a = strip_timing(render_machine(run(sc)));
    std::string b = strip_timing(render_machine(run(sc)));
    CHECK(a == b);

    // Each line is standalone JSON with a stable key order.
    std::istringstream in(a);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        Json j = Json::parse(line);
        CHECK(j.begin().key() == "scenario");
        CHECK(j.contains("value_nats"));
        CHECK(j.contains("value_bits"));
        ++lines;
    }
    CHECK(lines == 3);
}

TEST_CASE("human report renders values in both units") {
    RunReport report = run(parse_scenario(R"({
      "id": "units", "state": {"maximally_mixed": 2}, "compute": ["von_neumann"]
    })"));
    std::string nats = render_human(report, false);
    std::string bits = render_human(report, true);
    CHECK(nats.find("0.693147") != std::string::npos);
    CHECK(bits.find("1 bits") != std::string::npos);
}

TEST_CASE("check suite passes on a small sweep") {
    CheckSuiteReport report = check_suite({2}, {1});
    REQUIRE_FALSE(report.entries.empty());
    for (const CheckEntry& e : report.entries) {
        INFO(e.name, " dim=", e.dim, " seed=", e.seed, " ", e.detail);
        REQUIRE(e.pass);
    }
    CHECK(report.failures() == 0);
}

#ifdef QMI_CLI_PATH
TEST_CASE("command line binary runs a scenario end to end") {
    const std::string dir = "cli_test_tmp";
    std::string scenario_path = dir + "_scenario.json";
    std::string out_path = dir + "_out.txt";
    {
        std::ofstream f(scenario_path);
        f << kBasicScenario;
    }
    std::string cmd = std::string(QMI_CLI_PATH) + " run " + scenario_path + " > " +
                      out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(rc == 0);
    std::ifstream in(out_path);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str().find("von_neumann") != std::string::npos);

    std::string bad = std::string(QMI_CLI_PATH) + " run no_such_file.json > " +
                      out_path + " 2>&1";
    CHECK(std::system(bad.c_str()) != 0);
    std::remove(scenario_path.c_str());
    std::remove(out_path.c_str());
}
#endif
