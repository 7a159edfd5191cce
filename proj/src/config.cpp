#include "chsqb/config.hpp"

#include "chsqb/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

namespace chsqb {

std::vector<int> RunConfig::resolved_n_list() const {
    if (!n_list.empty()) return n_list;
    if (model == BasisKind::Hs) return {10, 20, 30, 40, 50, 60};
    return {6, 8, 10, 12, 14, 16};
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || v.empty()) throw ConfigError(key, "cannot parse '" + v + "' as a number");
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || v.empty()) throw ConfigError(key, "cannot parse '" + v + "' as an integer");
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key, "cannot parse '" + v + "' as a boolean");
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& key, const std::string& v, F&& one) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        const auto comma = v.find(',', start);
        const auto item = trim(std::string_view(v).substr(start, comma == std::string::npos ? std::string::npos
                                                                                              : comma - start));
        if (item.empty()) throw ConfigError(key, "empty entry in list '" + v + "'");
        out.push_back(one(key, item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Builder {
    RunConfig cfg;
    bool n_ph_explicit{false};
};

using Setter = std::function<void(Builder&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"model",
         [](Builder& b, const std::string& k, const std::string& v) {
             if (v == "chs") b.cfg.model = BasisKind::Chs;
             else if (v == "hs") b.cfg.model = BasisKind::Hs;
             else throw ConfigError(k, "expected 'chs' or 'hs', got '" + v + "'");
         }},
        {"n_spins", [](Builder& b, const auto& k, const auto& v) { b.cfg.params.n_spins = parse_int(k, v); }},
        {"g1", [](Builder& b, const auto& k, const auto& v) { b.cfg.params.g1 = parse_double(k, v); }},
        {"g2", [](Builder& b, const auto& k, const auto& v) { b.cfg.params.g2 = parse_double(k, v); }},
        {"gamma", [](Builder& b, const auto& k, const auto& v) { b.cfg.params.gamma = parse_double(k, v); }},
        {"delta", [](Builder& b, const auto& k, const auto& v) { b.cfg.params.delta = parse_double(k, v); }},
        {"omega_a", [](Builder& b, const auto& k, const auto& v) { b.cfg.params.omega_a = parse_double(k, v); }},
        {"omega_c", [](Builder& b, const auto& k, const auto& v) { b.cfg.params.omega_c = parse_double(k, v); }},
        {"nph_factor", [](Builder& b, const auto& k, const auto& v) { b.cfg.nph_factor = parse_int(k, v); }},
        {"n_ph",
         [](Builder& b, const auto& k, const auto& v) {
             b.cfg.params.n_ph = parse_int(k, v);
             b.n_ph_explicit = true;
         }},
        {"t_max", [](Builder& b, const auto& k, const auto& v) { b.cfg.t_max = parse_double(k, v); }},
        {"samples", [](Builder& b, const auto& k, const auto& v) { b.cfg.samples = parse_int(k, v); }},
        {"threads", [](Builder& b, const auto& k, const auto& v) { b.cfg.threads = parse_int(k, v); }},
        {"out", [](Builder& b, const auto&, const auto& v) { b.cfg.out = v; }},
        {"axis1", [](Builder& b, const auto&, const auto& v) { b.cfg.axis1.name = v; }},
        {"axis1_min", [](Builder& b, const auto& k, const auto& v) { b.cfg.axis1.min = parse_double(k, v); }},
        {"axis1_max", [](Builder& b, const auto& k, const auto& v) { b.cfg.axis1.max = parse_double(k, v); }},
        {"axis1_points", [](Builder& b, const auto& k, const auto& v) { b.cfg.axis1.points = parse_int(k, v); }},
        {"axis2", [](Builder& b, const auto&, const auto& v) { b.cfg.axis2.name = v; }},
        {"axis2_min", [](Builder& b, const auto& k, const auto& v) { b.cfg.axis2.min = parse_double(k, v); }},
        {"axis2_max", [](Builder& b, const auto& k, const auto& v) { b.cfg.axis2.max = parse_double(k, v); }},
        {"axis2_points", [](Builder& b, const auto& k, const auto& v) { b.cfg.axis2.points = parse_int(k, v); }},
        {"ground_metrics", [](Builder& b, const auto& k, const auto& v) { b.cfg.ground_metrics = parse_bool(k, v); }},
        {"n_list", [](Builder& b, const auto& k, const auto& v) { b.cfg.n_list = parse_list<int>(k, v, parse_int); }},
        {"factors", [](Builder& b, const auto& k, const auto& v) { b.cfg.factors = parse_list<int>(k, v, parse_int); }},
        {"g1_list",
         [](Builder& b, const auto& k, const auto& v) { b.cfg.g1_list = parse_list<double>(k, v, parse_double); }},
        {"g2_list",
         [](Builder& b, const auto& k, const auto& v) { b.cfg.g2_list = parse_list<double>(k, v, parse_double); }},
        {"ground_hamiltonian",
         [](Builder& b, const std::string& k, const std::string& v) {
             if (v == "full") b.cfg.ground_hamiltonian = GroundHamiltonian::Full;
             else if (v == "coupling") b.cfg.ground_hamiltonian = GroundHamiltonian::CouplingOnly;
             else throw ConfigError(k, "expected 'full' or 'coupling', got '" + v + "'");
         }},
        {"wigner_extent", [](Builder& b, const auto& k, const auto& v) { b.cfg.wigner_extent = parse_double(k, v); }},
        {"wigner_points", [](Builder& b, const auto& k, const auto& v) { b.cfg.wigner_points = parse_int(k, v); }},
    };
    return table;
}

void apply(Builder& b, const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key");
    it->second(b, key, value);
}

void check(const RunConfig& c) {
    try {
        validate(c.params);
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        throw ConfigError(msg.substr(0, msg.find(':')), msg.substr(msg.find(':') + 2));
    }
    if (c.nph_factor < 1) throw ConfigError("nph_factor", "must be >= 1");
    if (c.samples < 2) throw ConfigError("samples", "must be >= 2");
    if (!std::isfinite(c.t_max)) throw ConfigError("t_max", "must be finite");
    for (const auto* ax : {&c.axis1, &c.axis2}) {
        const std::string prefix = ax == &c.axis1 ? "axis1" : "axis2";
        static const std::vector<std::string> names = {"g1", "g2", "gamma", "delta", "omega_a", "omega_c"};
        if (std::find(names.begin(), names.end(), ax->name) == names.end()) {
            throw ConfigError(prefix, "'" + ax->name + "' is not a sweepable parameter");
        }
        if (ax->points < 1) throw ConfigError(prefix + "_points", "must be >= 1");
    }
    for (int n : c.n_list)
        if (n < 1) throw ConfigError("n_list", "entries must be >= 1");
    for (int f : c.factors)
        if (f < 1) throw ConfigError("factors", "entries must be >= 1");
    if (c.wigner_points < 3) throw ConfigError("wigner_points", "must be >= 3");
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
    Builder b;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string body = trim(line);
        if (!body.empty()) {
            const auto eq = body.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(line_no), "expected 'key = value', got '" + body + "'");
            }
            apply(b, trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    for (const auto& [key, value] : overrides) apply(b, key, value);
    if (!b.n_ph_explicit) b.cfg.params.n_ph = b.cfg.nph_factor * b.cfg.params.n_spins;
    check(b.cfg);
    return b.cfg;
}

}  // namespace chsqb
