#include "fedmimo/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fedmimo {

double SystemConfig::noise_watt() const {
    return std::pow(10.0, (noise_dbm - 30.0) / 10.0);
}

void SystemConfig::finalize() {
    const double nw = noise_watt();
    rho_d = p_d_watt / nw;
    rho_u = p_u_watt / nw;
    rho_p = p_p_watt / nw;
}

SystemConfig default_config() {
    SystemConfig cfg;
    cfg.finalize();
    return cfg;
}

std::vector<std::string> validate(const SystemConfig& cfg) {
    std::vector<std::string> problems;
    auto bad = [&](const std::string& msg) { problems.push_back(msg); };

    if (cfg.l < 1) bad("l: FL user count must be >= 1");
    if (cfg.k < 1) bad("k: non-FL user count must be >= 1");
    if (cfg.m < cfg.l + cfg.k)
        bad("m: need m >= l + k antennas for zero-forcing (m=" + std::to_string(cfg.m) +
            ", l+k=" + std::to_string(cfg.l + cfg.k) + ")");

    if (cfg.bandwidth_hz <= 0) bad("bandwidth_hz: must be positive");
    if (cfg.tau_c <= 0) bad("tau_c: must be positive");

    const int lk = cfg.l + cfg.k;
    auto check_pilot = [&](const char* key, int tau, int floor) {
        if (tau < floor)
            bad(std::string(key) + ": pilot length must be >= " + std::to_string(floor));
        if (tau >= cfg.tau_c)
            bad(std::string(key) + ": pilot length must be < tau_c");
    };
    check_pilot("tau_dp", cfg.tau_dp, lk);
    check_pilot("tau_1p", cfg.tau_1p, lk);
    check_pilot("tau_2p", cfg.tau_2p, cfg.k);
    check_pilot("tau_up", cfg.tau_up, lk);
    check_pilot("tau_3p", cfg.tau_3p, lk);

    if (cfg.p_d_watt <= 0) bad("p_d_watt: must be positive");
    if (cfg.p_u_watt <= 0) bad("p_u_watt: must be positive");
    if (cfg.p_p_watt <= 0) bad("p_p_watt: must be positive");
    if (cfg.rho_d <= 0) bad("rho_d: derived normalized power must be positive");
    if (cfg.rho_u <= 0) bad("rho_u: derived normalized power must be positive");
    if (cfg.rho_p <= 0) bad("rho_p: derived normalized power must be positive");

    if (cfg.s_d_bits <= 0) bad("s_d_bits: must be positive");
    if (cfg.s_u_bits <= 0) bad("s_u_bits: must be positive");
    if (cfg.n_c <= 0) bad("n_c: must be positive");
    if (cfg.d_bar_samples <= 0) bad("d_bar_samples: must be positive");
    if (cfg.c_bar_cycles <= 0) bad("c_bar_cycles: must be positive");

    if (cfg.f_min < 0) bad("f_min: must be nonnegative");
    if (!(cfg.f_min < cfg.f_max)) bad("f_max: need f_min < f_max");
    if (cfg.t_qos_s <= 0) bad("t_qos_s: must be positive");

    if (cfg.d_min_m <= 0) bad("d_min_m: must be positive");
    if (cfg.d_side_m <= 2.0 * cfg.d_min_m)
        bad("d_side_m: square side must exceed 2*d_min_m so layouts exist");
    if (cfg.shadow_sigma_db < 0) bad("shadow_sigma_db: must be nonnegative");

    if (!cfg.d_samples.empty()) {
        if (static_cast<int>(cfg.d_samples.size()) != cfg.l)
            bad("d_samples: expected " + std::to_string(cfg.l) + " entries");
        for (double v : cfg.d_samples)
            if (v <= 0 || v > cfg.d_bar_samples) {
                bad("d_samples: entries must lie in (0, d_bar_samples]");
                break;
            }
    }
    if (!cfg.c_cycles.empty()) {
        if (static_cast<int>(cfg.c_cycles.size()) != cfg.l)
            bad("c_cycles: expected " + std::to_string(cfg.l) + " entries");
        for (double v : cfg.c_cycles)
            if (v <= 0 || v > cfg.c_bar_cycles) {
                bad("c_cycles: entries must lie in (0, c_bar_cycles]");
                break;
            }
    }
    return problems;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
    SystemConfig cfg;  // file keys override the defaults
    std::vector<std::string> problems;

    std::map<std::string, std::function<void(const std::string&)>> setters;
    auto set_int = [&](const char* key, int& field) {
        setters[key] = [&field](const std::string& v) { field = std::stoi(v); };
    };
    auto set_double = [&](const char* key, double& field) {
        setters[key] = [&field](const std::string& v) { field = std::stod(v); };
    };
    set_int("m", cfg.m);
    set_int("l", cfg.l);
    set_int("k", cfg.k);
    set_double("bandwidth_hz", cfg.bandwidth_hz);
    set_int("tau_c", cfg.tau_c);
    set_int("tau_dp", cfg.tau_dp);
    set_int("tau_1p", cfg.tau_1p);
    set_int("tau_2p", cfg.tau_2p);
    set_int("tau_up", cfg.tau_up);
    set_int("tau_3p", cfg.tau_3p);
    set_double("p_d_watt", cfg.p_d_watt);
    set_double("p_u_watt", cfg.p_u_watt);
    set_double("p_p_watt", cfg.p_p_watt);
    set_double("noise_dbm", cfg.noise_dbm);
    set_double("s_d_bits", cfg.s_d_bits);
    set_double("s_u_bits", cfg.s_u_bits);
    set_int("n_c", cfg.n_c);
    set_double("d_bar_samples", cfg.d_bar_samples);
    set_double("c_bar_cycles", cfg.c_bar_cycles);
    set_double("f_min", cfg.f_min);
    set_double("f_max", cfg.f_max);
    set_double("t_qos_s", cfg.t_qos_s);
    set_double("d_side_m", cfg.d_side_m);
    set_double("d_min_m", cfg.d_min_m);
    set_double("shadow_sigma_db", cfg.shadow_sigma_db);
    setters["d_samples"] = [&cfg](const std::string& v) { cfg.d_samples = parse_list(v); };
    setters["c_cycles"] = [&cfg](const std::string& v) { cfg.c_cycles = parse_list(v); };

    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end()) {
            problems.push_back(key + ": unknown key");
            continue;
        }
        try {
            it->second(value);
        } catch (const std::exception&) {
            problems.push_back(key + ": cannot parse value '" + value + "'");
        }
    }

    // Normalized powers are always derived from the raw powers; a config
    // file cannot set them directly.
    cfg.finalize();

    for (const auto& msg : validate(cfg)) problems.push_back(msg);

    if (!problems.empty()) {
        std::string what = "invalid config:";
        for (const auto& p : problems) what += "\n  " + p;
        throw ConfigError(what);
    }
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const SystemConfig& cfg) {
    std::ostringstream os;
    auto put = [&os](const char* key, double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << key << " = " << buf << "\n";
    };
    os << "m = " << cfg.m << "\n";
    os << "l = " << cfg.l << "\n";
    os << "k = " << cfg.k << "\n";
    put("bandwidth_hz", cfg.bandwidth_hz);
    os << "tau_c = " << cfg.tau_c << "\n";
    os << "tau_dp = " << cfg.tau_dp << "\n";
    os << "tau_1p = " << cfg.tau_1p << "\n";
    os << "tau_2p = " << cfg.tau_2p << "\n";
    os << "tau_up = " << cfg.tau_up << "\n";
    os << "tau_3p = " << cfg.tau_3p << "\n";
    put("p_d_watt", cfg.p_d_watt);
    put("p_u_watt", cfg.p_u_watt);
    put("p_p_watt", cfg.p_p_watt);
    put("noise_dbm", cfg.noise_dbm);
    put("s_d_bits", cfg.s_d_bits);
    put("s_u_bits", cfg.s_u_bits);
    os << "n_c = " << cfg.n_c << "\n";
    put("d_bar_samples", cfg.d_bar_samples);
    put("c_bar_cycles", cfg.c_bar_cycles);
    put("f_min", cfg.f_min);
    put("f_max", cfg.f_max);
    put("t_qos_s", cfg.t_qos_s);
    put("d_side_m", cfg.d_side_m);
    put("d_min_m", cfg.d_min_m);
    put("shadow_sigma_db", cfg.shadow_sigma_db);
    auto put_list = [&os](const char* key, const std::vector<double>& v) {
        if (v.empty()) return;
        os << key << " = ";
        for (std::size_t i = 0; i < v.size(); ++i) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
            os << (i ? "," : "") << buf;
        }
        os << "\n";
    };
    put_list("d_samples", cfg.d_samples);
    put_list("c_cycles", cfg.c_cycles);
    return os.str();
}

}  // namespace fedmimo
