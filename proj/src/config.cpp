#include "tqet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tqet/io.hpp"

namespace tqet {

OutputFormat format_from_label(const std::string& label) {
    if (label == "csv") return OutputFormat::Csv;
    if (label == "json") return OutputFormat::Json;
    if (label == "both") return OutputFormat::Both;
    throw validation_error("unknown format '" + label + "' (csv, json, both)");
}

std::string format_label(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Both: return "both";
    }
    return "csv";
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw validation_error(origin + ": " + what);
}

double parse_double(const std::string& value, const std::string& key,
                    const std::string& origin) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        fail(origin, "key '" + key + "' needs a real number, got '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& value, const std::string& key,
              const std::string& origin) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        fail(origin, "key '" + key + "' needs an integer, got '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key,
                const std::string& origin) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(origin, "key '" + key + "' needs true/false, got '" + value + "'");
}

Pauli parse_pauli(const std::string& value, const std::string& key,
                  const std::string& origin) {
    if (value.size() == 1) {
        try {
            return pauli_from_label(value[0]);
        } catch (const validation_error&) {
        }
    }
    fail(origin, "key '" + key + "' needs one of I, X, Y, Z, got '" + value + "'");
}

}  // namespace

void apply_key(RunConfig& config, const std::string& key, const std::string& value,
               const std::string& origin) {
    ChainSpec& chain = config.chain;
    if (key == "n_sites") chain.n_sites = parse_int(value, key, origin);
    else if (key == "j") chain.j = parse_double(value, key, origin);
    else if (key == "h") chain.h = parse_double(value, key, origin);
    else if (key == "g") chain.g = parse_double(value, key, origin);
    else if (key == "site_a") chain.site_a = parse_int(value, key, origin);
    else if (key == "site_b") chain.site_b = parse_int(value, key, origin);
    else if (key == "sigma_a") chain.sigma_a = parse_pauli(value, key, origin);
    else if (key == "sigma_b") chain.sigma_b = parse_pauli(value, key, origin);
    else if (key == "t_max") chain.t_max = parse_double(value, key, origin);
    else if (key == "dt") chain.dt = parse_double(value, key, origin);
    else if (key == "gh_g_min") config.gh_g_min = parse_double(value, key, origin);
    else if (key == "gh_g_max") config.gh_g_max = parse_double(value, key, origin);
    else if (key == "gh_g_points") config.gh_g_points = parse_int(value, key, origin);
    else if (key == "gh_h_min") config.gh_h_min = parse_double(value, key, origin);
    else if (key == "gh_h_max") config.gh_h_max = parse_double(value, key, origin);
    else if (key == "gh_h_points") config.gh_h_points = parse_int(value, key, origin);
    else if (key == "n_min") config.n_min = parse_int(value, key, origin);
    else if (key == "n_max") config.n_max = parse_int(value, key, origin);
    else if (key == "allow_large_n") config.allow_large_n = parse_bool(value, key, origin);
    else if (key == "out_dir") config.out_dir = value;
    else if (key == "format") {
        try {
            config.format = format_from_label(value);
        } catch (const validation_error& e) {
            fail(origin, e.what());
        }
    } else if (key == "workers") config.workers = parse_int(value, key, origin);
    else if (key == "enable_gh") config.enable_gh = parse_bool(value, key, origin);
    else if (key == "enable_ece") config.enable_ece = parse_bool(value, key, origin);
    else if (key == "enable_ratio") config.enable_ratio = parse_bool(value, key, origin);
    else if (key == "enable_fixed") config.enable_fixed = parse_bool(value, key, origin);
    else if (key == "enable_sync") config.enable_sync = parse_bool(value, key, origin);
    else if (key == "scalarization") {
        try {
            config.scalarization = scalarization_from_label(value);
        } catch (const validation_error& e) {
            fail(origin, e.what());
        }
    } else {
        fail(origin, "unknown config key '" + key + "'");
    }
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::ostringstream where;
        where << origin << ":" << line_no;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(where.str(), "expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(where.str(), "empty key");
        apply_key(config, key, value, where.str());
    }
    return config;
}

void apply_override(RunConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw validation_error("--set needs key=value, got '" + assignment + "'");
    }
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    apply_key(config, key, value, "--set " + assignment);
}

void finalize_config(RunConfig& config) {
    if (config.chain.n_sites == 0) {
        throw validation_error("n_sites missing");
    }
    if (config.chain.site_b == 0) {
        config.chain.site_b = config.chain.n_sites - 1;
    }
    config.chain.validate();
    if (config.gh_g_points < 1 || config.gh_h_points < 1) {
        throw validation_error("gh grid needs at least one point per axis");
    }
    if (config.n_min > config.n_max) {
        throw validation_error("n_min must be <= n_max");
    }
    if (config.n_min < 4 || config.n_max > kMaxSites) {
        std::ostringstream msg;
        msg << "sweep N range must lie in [4, " << kMaxSites << "]";
        throw validation_error(msg.str());
    }
    if (config.n_max > 10 && !config.allow_large_n) {
        throw validation_error("n_max > 10 requires allow_large_n=true");
    }
    if (config.workers < 1) {
        throw validation_error("workers must be >= 1");
    }
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw validation_error("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    RunConfig config = parse_config_text(text.str(), path);
    finalize_config(config);
    return config;
}

std::string canonical_config(const RunConfig& config) {
    const ChainSpec& c = config.chain;
    std::map<std::string, std::string> kv;
    kv["n_sites"] = std::to_string(c.n_sites);
    kv["j"] = format_sci(c.j);
    kv["h"] = format_sci(c.h);
    kv["g"] = format_sci(c.g);
    kv["site_a"] = std::to_string(c.site_a);
    kv["site_b"] = std::to_string(c.site_b);
    kv["sigma_a"] = std::string(1, pauli_label(c.sigma_a));
    kv["sigma_b"] = std::string(1, pauli_label(c.sigma_b));
    kv["t_max"] = format_sci(c.t_max);
    kv["dt"] = format_sci(c.dt);
    kv["gh_g_min"] = format_sci(config.gh_g_min);
    kv["gh_g_max"] = format_sci(config.gh_g_max);
    kv["gh_g_points"] = std::to_string(config.gh_g_points);
    kv["gh_h_min"] = format_sci(config.gh_h_min);
    kv["gh_h_max"] = format_sci(config.gh_h_max);
    kv["gh_h_points"] = std::to_string(config.gh_h_points);
    kv["n_min"] = std::to_string(config.n_min);
    kv["n_max"] = std::to_string(config.n_max);
    kv["allow_large_n"] = config.allow_large_n ? "1" : "0";
    kv["scalarization"] = scalarization_label(config.scalarization);
    std::string out;
    for (const auto& [key, value] : kv) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

std::string config_hash(const RunConfig& config) {
    const std::string canon = canonical_config(config);
    uint64_t hash = 14695981039346656037ull;
    for (const unsigned char c : canon) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string provenance_line(const RunConfig& config) {
    return std::string("# tqet-lab ") + kVersionString +
           " config-hash=" + config_hash(config);
}

}  // namespace tqet
