#include "chsqb/commands.hpp"
#include "chsqb/config.hpp"
#include "chsqb/csv.hpp"
#include "chsqb/errors.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

using namespace chsqb;

namespace {

std::string config_error_key(std::string_view text, const Overrides& o = {}) {
    try {
        parse_config(text, o);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "";
}

int cli(const std::string& args) {
    const std::string cmd = std::string(CHSQB_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("empty config gives the documented defaults") {
    const auto c = parse_config("");
    CHECK(c.model == BasisKind::Chs);
    CHECK(c.params.n_spins == 10);
    CHECK(c.params.g1 == 2.0);
    CHECK(c.params.gamma == 0.5);
    CHECK(c.params.delta == 2.0);
    CHECK(c.params.omega_a == 1.0);
    CHECK(c.params.omega_c == 1.0);
    CHECK(c.params.n_ph == 40);
    CHECK(c.samples == 4000);
    CHECK(c.axis1.name == "g1");
    CHECK(c.axis2.points == 41);
    CHECK(c.resolved_n_list() == std::vector<int>{6, 8, 10, 12, 14, 16});
    CHECK(parse_config("model = hs").resolved_n_list() == std::vector<int>{10, 20, 30, 40, 50, 60});
}

TEST_CASE("file values, comments and overrides") {
    const std::string text = "# battery\n  g2 = 0.5   # inline\n\nn_spins=6\nn_list = 4, 6 ,8\n";
    const auto c = parse_config(text, {{"g2", "1.0"}});
    CHECK(c.params.g2 == 1.0);
    CHECK(c.params.n_spins == 6);
    CHECK(c.params.n_ph == 24);
    CHECK(c.n_list == std::vector<int>{4, 6, 8});
    CHECK(parse_config(text).params.g2 == 0.5);

    const auto explicit_cutoff = parse_config("n_ph = 30\nn_spins = 6\nnph_factor = 3");
    CHECK(explicit_cutoff.params.n_ph == 30);
    CHECK(parse_config("nph_factor = 3\nn_spins = 6").params.n_ph == 18);
    CHECK(parse_config("ground_hamiltonian = coupling").ground_hamiltonian == GroundHamiltonian::CouplingOnly);
}

TEST_CASE("config errors name the offending key") {
    CHECK(config_error_key("n_spins = 0") == "n_spins");
    CHECK(config_error_key("foo = 1") == "foo");
    CHECK(config_error_key("g1 = abc") == "g1");
    CHECK(config_error_key("g1 = 1.0x") == "g1");
    CHECK(config_error_key("model = dicke") == "model");
    CHECK(config_error_key("n_ph = 3") == "n_ph");
    CHECK(config_error_key("axis1 = n_spins") == "axis1");
    CHECK(config_error_key("samples = 1") == "samples");
    CHECK(config_error_key("", {{"threads", "two"}}) == "threads");
    CHECK(config_error_key("n_list = 4,,6") == "n_list");
    CHECK(config_error_key("just text") == "line 1");
    // every key except `out` (empty means stdout) rejects an empty value
    for (const auto& key : config_keys())
        if (key != "out") CHECK(config_error_key(key + " = ") == key);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "nan");
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("CSV round trip") {
    CsvTable t{{"a", "b"}, {{1.0, 0.1}, {std::numeric_limits<double>::quiet_NaN(), -3e-300}}, {"note=1"}};
    const std::string s = t.str();
    CHECK(s == "a,b\n1,0.10000000000000001\nnan,-3.0000000000000002e-300\n# note=1\n");
    const auto back = parse_csv(s);
    CHECK(back.header == t.header);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0] == t.rows[0]);
    CHECK(std::isnan(back.rows[1][0]));
    CHECK(back.rows[1][1] == -3e-300);
    CHECK(back.trailing_comments == t.trailing_comments);
}

TEST_CASE("evolve schema") {
    const auto c = parse_config("n_spins = 4\nsamples = 50");
    const auto t = run("evolve", c);
    CHECK(t.header == std::vector<std::string>{"t", "E", "P"});
    REQUIRE(t.rows.size() == 50);
    CHECK(t.rows.front() == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(t.str().rfind("t,E,P\n0,0,0\n", 0) == 0);
}

TEST_CASE("sweep schema, nan marking and determinism") {
    auto c = parse_config("n_spins = 3\nsamples = 200\naxis1 = omega_a\naxis1_min = 0\naxis1_max = 1\naxis1_points = 2\n"
                          "axis2_points = 3\nground_metrics = true\nthreads = 1");
    const auto t = run("sweep", c);
    CHECK(t.header == std::vector<std::string>{"axis1", "axis2", "Emax", "Pmax", "tE", "tP", "order", "S", "EN"});
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows[0][0] == 0.0);
    CHECK(std::isnan(t.rows[0][2]));
    CHECK(std::isnan(t.rows[0][8]));
    CHECK(std::isfinite(t.rows[3][2]));
    c.threads = 3;
    CHECK(run("sweep", c).str() == t.str());

    c.ground_metrics = false;
    CHECK(run("sweep", c).header.size() == 6);
}

TEST_CASE("other subcommand schemas") {
    const auto scaling = run("scaling", parse_config("model = hs\nn_list = 4,6,8\nsamples = 400"));
    CHECK(scaling.header == std::vector<std::string>{"N", "Emax", "tE", "Pmax", "tP"});
    REQUIRE(scaling.trailing_comments.size() == 1);
    CHECK(scaling.trailing_comments[0].rfind("alpha_P=", 0) == 0);
    CHECK(scaling.trailing_comments[0].find(",beta_P=") != std::string::npos);
    CHECK(scaling.trailing_comments[0].find(",alpha_E=") != std::string::npos);

    const auto ground = run("ground", parse_config("n_spins = 3\ng1_list = 0, 1\ng2_list = 0.2,0.4,0.6"));
    CHECK(ground.header == std::vector<std::string>{"g1", "g2", "energy", "order", "S", "EN"});
    REQUIRE(ground.rows.size() == 6);
    CHECK(ground.rows[1][0] == 0.0);
    CHECK(ground.rows[1][1] == 0.4);

    const auto w = run("wigner", parse_config("n_spins = 2\nwigner_points = 5"));
    CHECK(w.header == std::vector<std::string>{"x", "p", "W"});
    REQUIRE(w.rows.size() == 25);
    CHECK(w.rows[1][0] == w.rows[0][0]);
    CHECK(w.rows[1][1] > w.rows[0][1]);
    CHECK(w.rows[0][0] == doctest::Approx(-2.0 * std::sqrt(8.0)));

    const auto conv = run("convergence", parse_config("n_spins = 3\nsamples = 300"));
    CHECK(conv.header == std::vector<std::string>{"factor", "Emax", "rel_dev"});
    REQUIRE(conv.rows.size() == 3);
    CHECK(conv.rows[2][2] == 0.0);

    for (const char* sub : {"ground", "wigner", "convergence"}) CHECK_THROWS_AS(run(sub, parse_config("model = hs")), ConfigError);
    CHECK_THROWS_AS(run("sweep", parse_config("model = hs\nground_metrics = true")), ConfigError);
    CHECK_THROWS_AS(run("plot", parse_config("")), ConfigError);
}

TEST_CASE("command-line exit codes and output") {
    const auto dir = std::filesystem::temp_directory_path() / "chsqb_cli_test";
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "run.cfg";
    std::ofstream(cfg) << "n_spins = 3\nsamples = 20\ng2 = 0.5\n";

    CHECK(cli("evolve --config " + cfg.string() + " --out " + (dir / "a.csv").string()) == 0);
    CHECK(cli("evolve --config " + cfg.string() + " --g2 0.5 --threads 2 --out " + (dir / "b.csv").string()) == 0);
    const auto a = slurp(dir / "a.csv");
    CHECK(a.rfind("t,E,P\n0,0,0\n", 0) == 0);
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(cli("evolve --config " + cfg.string() + " --g2 1.0 --out " + (dir / "c.csv").string()) == 0);
    CHECK(a != slurp(dir / "c.csv"));

    CHECK(cli("evolve --n 0") == 2);
    CHECK(cli("evolve --g1 nope") == 2);
    CHECK(cli("evolve --bogus 1") == 2);
    CHECK(cli("frobnicate") == 2);
    CHECK(cli("") == 2);
    CHECK(cli("wigner --model hs") == 2);
    CHECK(cli("sweep --n 2 --samples 20 --axis1-range 0:1 ") == 2);
    CHECK(cli("sweep --n 2 --samples 20 --axis1-range 0:1:2 --axis2-range 0:1:2 --out " + (dir / "s.csv").string()) == 0);
    CHECK(cli("--help") == 0);
    std::filesystem::remove_all(dir);
}
