#include "revlab/cli/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "revlab/errors.hpp"

namespace revlab::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "coeff",   "omega1",  "omega2",        "E1",      "E2",    "h",     "h_sweep",
    "delta1",  "delta2",  "delta1p",       "delta2p", "window_factor", "t_start",
    "t_end",   "samples", "alpha",         "beta",    "mu",    "s",     "max_den",
    "tol",     "q_max",   "eta",           "eps",     "dump_packet"};

struct RawConfig {
    // key -> (value, line); coeff lines collected separately
    std::map<std::string, std::pair<std::string, int>> kv;
    std::vector<std::pair<std::string, int>> coeffs;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

RawConfig tokenize(const std::string& text, const std::string& path) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(path + ":" + std::to_string(lineno) + ": empty key or value");
        if (!kKnownKeys.count(key))
            throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key `" + key + "`");
        if (key == "coeff") {
            raw.coeffs.emplace_back(value, lineno);
        } else {
            if (raw.kv.count(key))
                throw ParseError(path + ":" + std::to_string(lineno) + ": duplicate key `" + key +
                                 "` (first at line " + std::to_string(raw.kv[key].second) + ")");
            raw.kv[key] = {value, lineno};
        }
    }
    return raw;
}

double parse_double(const std::string& v, const std::string& path, int line) {
    size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line) + ": `" + v + "` is not a number");
    }
    if (pos != v.size())
        throw ParseError(path + ":" + std::to_string(line) + ": trailing junk after number `" + v + "`");
    return x;
}

long long parse_int(const std::string& v, const std::string& path, int line) {
    size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line) + ": `" + v + "` is not an integer");
    }
    if (pos != v.size())
        throw ParseError(path + ":" + std::to_string(line) + ": trailing junk after integer `" + v + "`");
    return x;
}

bool parse_bool(const std::string& v, const std::string& path, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError(path + ":" + std::to_string(line) + ": `" + v + "` is not a boolean");
}

}  // namespace

Config parse_config_text(const std::string& text, const std::string& path) {
    const RawConfig raw = tokenize(text, path);

    auto require = [&](const std::string& key) -> std::pair<std::string, int> {
        const auto it = raw.kv.find(key);
        if (it == raw.kv.end()) throw ValidationError(path + ": missing required key `" + key + "`");
        return it->second;
    };
    auto get_double = [&](const std::string& key, double dflt) {
        const auto it = raw.kv.find(key);
        if (it == raw.kv.end()) return dflt;
        return parse_double(it->second.first, path, it->second.second);
    };
    auto get_int = [&](const std::string& key, long long dflt) {
        const auto it = raw.kv.find(key);
        if (it == raw.kv.end()) return dflt;
        return parse_int(it->second.first, path, it->second.second);
    };

    Config cfg;

    if (raw.coeffs.empty()) throw ValidationError(path + ": at least one `coeff = i j c` line required");
    PolynomialF f;
    for (const auto& [v, line] : raw.coeffs) {
        std::istringstream cs(v);
        long long i = 0, j = 0;
        double c = 0.0;
        if (!(cs >> i >> j >> c))
            throw ParseError(path + ":" + std::to_string(line) + ": coeff needs `i j c`");
        std::string rest;
        if (cs >> rest)
            throw ParseError(path + ":" + std::to_string(line) + ": trailing junk in coeff line");
        if (i < 0 || j < 0)
            throw ValidationError(path + ":" + std::to_string(line) + ": exponents must be nonnegative");
        f.add_term(static_cast<int>(i), static_cast<int>(j), c);
    }

    const auto [w1s, w1l] = require("omega1");
    const auto [w2s, w2l] = require("omega2");
    const double w1 = parse_double(w1s, path, w1l);
    const double w2 = parse_double(w2s, path, w2l);
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw ValidationError(path + ": omega1/omega2 must be positive");

    const auto [e1s, e1l] = require("E1");
    const auto [e2s, e2l] = require("E2");
    const double e1 = parse_double(e1s, path, e1l);
    const double e2 = parse_double(e2s, path, e2l);
    if (e1 < 0.0 || e1 > 1.0 || e2 < 0.0 || e2 > 1.0)
        throw ValidationError(path + ": E1/E2 must lie in [0,1]");

    PacketParams params;
    const auto [d1s, d1l] = require("delta1");
    const auto [d2s, d2l] = require("delta2");
    const auto [d1ps, d1pl] = require("delta1p");
    const auto [d2ps, d2pl] = require("delta2p");
    params.delta1 = parse_double(d1s, path, d1l);
    params.delta2 = parse_double(d2s, path, d2l);
    params.delta1p = parse_double(d1ps, path, d1pl);
    params.delta2p = parse_double(d2ps, path, d2pl);
    params.window_factor = get_double("window_factor", 8.0);
    auto in_range = [](double d) { return d > 0.5 && d < 1.0; };
    if (!in_range(params.delta1) || !in_range(params.delta2) || !in_range(params.delta1p) ||
        !in_range(params.delta2p))
        throw ValidationError(path + ": localization exponents must lie in (1/2, 1)");
    if (!(params.delta1p > params.delta1))
        throw ValidationError(path + ": delta1p must exceed delta1 (tail lemma hypothesis)");
    if (!(params.delta2p > params.delta2))
        throw ValidationError(path + ": delta2p must exceed delta2 (tail lemma hypothesis)");
    if (!(params.window_factor >= 0.0))
        throw ValidationError(path + ": window_factor must be nonnegative");

    cfg.scenario = Scenario{std::move(f), EnergyPoint{e1, e2}, OscillatorPair{w1, w2}, params,
                            Envelope::gaussian()};

    if (raw.kv.count("h")) {
        cfg.h = get_double("h", 0.0);
        if (!(cfg.h > 0.0)) throw ValidationError(path + ": h must be positive");
    }
    if (raw.kv.count("h_sweep")) {
        const auto [hs, hl] = raw.kv.at("h_sweep");
        std::istringstream ss(hs);
        std::string tok;
        while (ss >> tok) cfg.h_sweep.push_back(parse_double(tok, path, hl));
        for (double h : cfg.h_sweep)
            if (!(h > 0.0)) throw ValidationError(path + ": h_sweep values must be positive");
    }
    if (cfg.h == 0.0 && cfg.h_sweep.empty())
        throw ValidationError(path + ": provide `h` (or `h_sweep` for convergence runs)");
    if (cfg.h == 0.0 && !cfg.h_sweep.empty()) cfg.h = cfg.h_sweep.back();

    cfg.t_start = get_double("t_start", 0.0);
    if (raw.kv.count("t_end")) cfg.t_end = get_double("t_end", 0.0);
    cfg.samples = static_cast<int>(get_int("samples", 1024));
    if (cfg.samples < 2) throw ValidationError(path + ": samples must be at least 2");

    cfg.alpha = get_double("alpha", 0.0);
    cfg.beta = get_double("beta", -1.0);
    cfg.mu = get_double("mu", 0.05);
    cfg.s = get_double("s", 0.1);
    cfg.max_den = get_int("max_den", 64);
    cfg.tol = get_double("tol", 1e-9);
    cfg.q_max = get_int("q_max", 10000);
    cfg.eta = get_double("eta", 0.01);
    cfg.eps = get_double("eps", 0.0);
    if (raw.kv.count("dump_packet")) {
        const auto [vs, vl] = raw.kv.at("dump_packet");
        cfg.dump_packet = parse_bool(vs, path, vl);
    }

    if (cfg.max_den < 1) throw ValidationError(path + ": max_den must be at least 1");
    if (!(cfg.tol > 0.0)) throw ValidationError(path + ": tol must be positive");
    if (cfg.q_max < 1) throw ValidationError(path + ": q_max must be at least 1");
    if (!(cfg.mu > 0.0)) throw ValidationError(path + ": mu must be positive");
    if (!(cfg.s > 0.0)) throw ValidationError(path + ": s must be positive");

    return cfg;
}

Config parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace revlab::cli
