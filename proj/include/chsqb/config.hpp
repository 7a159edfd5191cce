// config.hpp: run configuration: `key = value` files plus flag overrides

#pragma once

#include "chsqb/basis.hpp"
#include "chsqb/groundinfo.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chsqb {

struct AxisSpec {
    std::string name;
    double min{0.0};
    double max{0.0};
    int points{41};
};

struct RunConfig {
    BasisKind model{BasisKind::Chs};
    ModelParams params{};          // n_ph resolved from nph_factor unless set explicitly
    int nph_factor{4};

    double t_max{0.0};             // <= 0: 20 pi / omega_a
    int samples{4000};
    int threads{0};                // <= 0: hardware concurrency
    std::string out;               // empty: stdout

    AxisSpec axis1{"g1", -3.0, 3.0, 41};
    AxisSpec axis2{"g2", 0.0, 1.0, 41};
    bool ground_metrics{false};

    std::vector<int> n_list;       // empty: 6..16 step 2 (chs), 10..60 step 10 (hs)
    std::vector<int> factors{3, 4, 6};

    std::vector<double> g1_list;   // ground: empty means {g1}
    std::vector<double> g2_list;   // ground: empty means {g2}
    GroundHamiltonian ground_hamiltonian{GroundHamiltonian::Full};

    double wigner_extent{0.0};     // <= 0: 2 sqrt(n_ph)
    int wigner_points{81};

    std::vector<int> resolved_n_list() const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Every accepted key, in documentation order.
const std::vector<std::string>& config_keys();

// Parses `key = value` lines ('#' starts a comment), then applies overrides
// in order. Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

}  // namespace chsqb
