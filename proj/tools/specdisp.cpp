// specdisp: run configured scenarios and the acceptance suite.
//
//   specdisp run --config scenario.json --out results/ [--natural-units]
//   specdisp run --demo --out results/
//   specdisp verify [--suite all|arith|dispersion|hill|cli]

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "specdisp/acceptance.hpp"
#include "specdisp/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace specdisp;

int verify(const std::string& suite) {
    try {
        return acceptance::report(acceptance::run_acceptance(suite), std::cout) == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run(const std::string& config, bool demo, const fs::path& out, bool natural) {
    scenario::ScenarioConfig cfg;
    try {
        io::json j;
        fs::path base;
        if (demo) {
            j = scenario::demo_config();
        } else {
            std::ifstream is(config);
            if (!is) throw io::config_error("cannot open config " + config);
            try {
                j = io::json::parse(is);
            } catch (const io::json::parse_error& e) {
                throw io::config_error(std::string("malformed JSON: ") + e.what());
            }
            base = fs::path(config).parent_path();
        }
        cfg = scenario::parse_config(j, base, natural);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (cfg.mode == scenario::Mode::Verify) return verify(cfg.suite);
    const auto r = scenario::run_scenario(cfg, out, std::cerr);
    for (const auto& f : r.files) std::cout << (out / f).string() << '\n';
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral dispersion propagators and Fourier-side solvers"};
    app.set_version_flag("--version", specdisp::scenario::kVersion);
    app.require_subcommand(1);

    std::string config, suite = "all";
    std::string out = "specdisp_out";
    bool natural = false, demo = false;

    auto* run_cmd = app.add_subcommand("run", "Run a scenario described by a JSON config");
    auto* cfg_opt = run_cmd->add_option("--config,-c", config, "Scenario JSON file")->check(CLI::ExistingFile);
    run_cmd->add_flag("--demo", demo, "Use the bundled demo scenario")->excludes(cfg_opt);
    run_cmd->add_option("--out,-o", out, "Output directory");
    run_cmd->add_flag("--natural-units", natural, "Force E0 = hbar = 1");

    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
    verify_cmd->add_option("--suite,-s", suite, "Criterion group")
        ->check(CLI::IsMember({"all", "arith", "dispersion", "hill", "cli"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*run_cmd) {
        if (config.empty() && !demo) {
            std::cerr << "error: run needs --config or --demo\n";
            return 2;
        }
        return run(config, demo, out, natural);
    }
    return verify(suite);
}
