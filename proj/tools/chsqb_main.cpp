// chsqb: command-line front end for the battery simulator.
//
//   chsqb <evolve|sweep|scaling|ground|wigner|convergence> [--config FILE] [flags]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical invariant violation.

#include "chsqb/commands.hpp"
#include "chsqb/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

// Flag name -> config key. Values are passed through as text so the file and
// the flags share one parser.
const std::map<std::string, std::string>& flag_keys() {
    static const std::map<std::string, std::string> m = {
        {"--model", "model"},
        {"--n", "n_spins"},
        {"--g1", "g1"},
        {"--g2", "g2"},
        {"--gamma", "gamma"},
        {"--delta", "delta"},
        {"--omega-a", "omega_a"},
        {"--omega-c", "omega_c"},
        {"--nph-factor", "nph_factor"},
        {"--n-ph", "n_ph"},
        {"--t-max", "t_max"},
        {"--samples", "samples"},
        {"--out", "out"},
        {"--threads", "threads"},
        {"--axis1", "axis1"},
        {"--axis2", "axis2"},
        {"--ground-metrics", "ground_metrics"},
        {"--n-list", "n_list"},
        {"--factors", "factors"},
        {"--g1-list", "g1_list"},
        {"--g2-list", "g2_list"},
        {"--ground-hamiltonian", "ground_hamiltonian"},
        {"--wigner-extent", "wigner_extent"},
        {"--wigner-points", "wigner_points"},
    };
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-diagonalization simulator for cavity-Heisenberg and Heisenberg spin-chain quantum batteries"};
    app.require_subcommand(1, 1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);

    std::map<std::string, std::string> values;
    for (const auto& [flag, key] : flag_keys()) app.add_option(flag, values[flag], "sets '" + key + "'");
    std::map<std::string, std::string> ranges{{"--axis1-range", ""}, {"--axis2-range", ""}};
    for (auto& [flag, v] : ranges) app.add_option(flag, v, "min:max:points");

    for (const auto& name : chsqb::subcommands()) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : chsqb::kExitConfig;
    }

    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        chsqb::Overrides overrides;
        for (const auto& [flag, key] : flag_keys()) {
            if (app.count(flag) > 0) overrides.emplace_back(key, values[flag]);
        }
        for (const auto& [flag, v] : ranges) {
            if (app.count(flag) == 0) continue;
            const std::string axis = flag.substr(2, 5);
            const auto a = v.find(':');
            const auto b = v.find(':', a == std::string::npos ? a : a + 1);
            if (a == std::string::npos || b == std::string::npos) {
                throw chsqb::ConfigError(axis + "_range", "expected min:max:points, got '" + v + "'");
            }
            overrides.emplace_back(axis + "_min", v.substr(0, a));
            overrides.emplace_back(axis + "_max", v.substr(a + 1, b - a - 1));
            overrides.emplace_back(axis + "_points", v.substr(b + 1));
        }
        const auto cfg = chsqb::parse_config(text, overrides);
        const auto table = chsqb::run(app.get_subcommands().front()->get_name(), cfg);
        if (cfg.out.empty()) {
            table.write(std::cout);
        } else {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out) throw chsqb::ConfigError("out", "cannot open '" + cfg.out + "' for writing");
            table.write(out);
        }
        return chsqb::kExitOk;
    } catch (const chsqb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return chsqb::kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return chsqb::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return chsqb::kExitInvariant;
    }
}
