#include "qmi/check_suite.hpp"
#include "qmi/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qmi::ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct GlobalOptions {
    std::uint64_t seed = 0;  // 0 -> scenario's own seed
    std::string units = "nats";
    std::string tol_profile = "default";
    std::string report_path;
};

void apply_globals(qmi::Scenario& sc, const GlobalOptions& opts) {
    if (opts.seed != 0) {
        sc.seed = opts.seed;
        sc.search.seed = opts.seed;
    }
    if (opts.tol_profile == "strict") {
        sc.search.restarts *= 2;
        sc.search.refine_max_iter *= 2;
        sc.search.refine_step_min /= 10.0;
    }
}

int run_scenario_file(const std::string& path, const GlobalOptions& opts,
                      const std::vector<std::string>& compute_override) {
    qmi::Scenario sc = qmi::parse_scenario(read_file(path));
    if (!compute_override.empty()) sc.compute = compute_override;
    apply_globals(sc, opts);
    qmi::RunReport report = qmi::run(sc);
    std::cout << qmi::render_human(report, opts.units == "bits");
    if (!opts.report_path.empty()) {
        std::ofstream out(opts.report_path);
        out << qmi::render_machine(report);
    }
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum mutual entropy and channel capacity calculator"};
    app.fallthrough();  // allow the global options after the subcommand too
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--seed", opts.seed, "Override the scenario seed");
    app.add_option("--units", opts.units, "Display units")
        ->check(CLI::IsMember({"nats", "bits"}));
    app.add_option("--tol-profile", opts.tol_profile, "Search-effort profile")
        ->check(CLI::IsMember({"default", "strict"}));
    app.add_option("--report", opts.report_path, "Write the machine report here");

    struct Sub {
        const char* name;
        const char* help;
        std::vector<std::string> compute;
    };
    const std::vector<Sub> subs = {
        {"entropy", "von Neumann entropy of the scenario state", {"von_neumann"}},
        {"relent", "Umegaki relative entropy of state vs sigma", {"relent"}},
        {"mutual", "quantum mutual entropy of state through channel", {"mutual"}},
        {"pseudo", "pseudo-mutual entropy of state through channel", {"pseudo"}},
        {"capacity", "quantum channel capacity over the full state space",
         {"quantum_capacity"}},
        {"cqc", "C-Q-C pipeline mutual entropy and capacity",
         {"cqc_mutual", "cqc_capacity"}},
        {"holevo", "Holevo bound of the coded ensemble", {"holevo"}},
        {"run", "run every computation a scenario file requests", {}},
    };

    std::map<std::string, std::string> file_args;
    for (const Sub& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        cmd->add_option("scenario", file_args[sub.name], "Scenario file (JSON)")
            ->required();
    }

    CLI::App* check = app.add_subcommand("check", "Run the built-in invariant battery");
    std::vector<int> dims{2, 3};
    int n_seeds = 5;
    check->add_option("--dims", dims, "Dimensions to cover");
    check->add_option("--seeds", n_seeds, "Number of seeds per dimension");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const Sub& sub : subs)
            if (app.got_subcommand(sub.name))
                return run_scenario_file(file_args[sub.name], opts, sub.compute);

        if (app.got_subcommand("check")) {
            std::vector<std::uint64_t> seeds;
            std::uint64_t base = opts.seed == 0 ? 1 : opts.seed;
            for (int i = 0; i < n_seeds; ++i) seeds.push_back(base + i);
            qmi::CheckSuiteReport report = qmi::check_suite(dims, seeds);
            int fails = report.failures();
            std::cout << report.entries.size() << " checks, " << fails << " failures\n";
            for (const qmi::CheckEntry& e : report.entries)
                if (!e.pass)
                    std::cout << "FAIL " << e.name << " dim=" << e.dim
                              << " seed=" << e.seed << " " << e.detail << "\n";
            return fails == 0 ? 0 : 1;
        }
    } catch (const qmi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
