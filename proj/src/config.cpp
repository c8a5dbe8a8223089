#include "krue/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "krue/errors.hpp"

namespace krue {

const char* encoding_name(Encoding enc) {
    return enc == Encoding::FourState ? "4state" : "6state";
}

Encoding encoding_from_name(const std::string& name) {
    if (name == "4state") return Encoding::FourState;
    if (name == "6state") return Encoding::SixState;
    throw ConfigError("unknown encoding '" + name + "' (expected 4state or 6state)");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    if (v.empty() || v[0] == '-') throw ConfigError(key + ": expected unsigned integer, got '" + v + "'");
    size_t pos = 0;
    uint64_t out;
    try {
        out = std::stoull(v, &pos, 10);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected unsigned integer, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": trailing junk in '" + v + "'");
    return out;
}

unsigned parse_uint(const std::string& key, const std::string& v) {
    uint64_t x = parse_u64(key, v);
    if (x > 0xFFFFFFFFull) throw ConfigError(key + ": value too large");
    return unsigned(x);
}

double parse_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected number, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": trailing junk in '" + v + "'");
    return out;
}

std::string canon_channel(const std::string& key, const std::string& v) {
    if (v == "ideal" || v == "none") return "ideal";
    if (v == "bsc") return "bsc";
    if (v == "intercept-resend") return "intercept-resend";
    throw ConfigError(key + ": unknown channel '" + v +
                      "' (expected ideal, none, bsc, or intercept-resend)");
}

ChannelModel build_channel(const std::string& channel, double gamma) {
    if (channel == "ideal") return ChannelModel::ideal();
    if (channel == "bsc") return ChannelModel::bsc(gamma);
    return ChannelModel::intercept_resend();
}

// Section scanner: collects key=value pairs, rejecting duplicates.
struct Section {
    std::map<std::string, std::string> kv;
    bool seen = false;

    const std::string* get(const std::string& key) const {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    }
    std::string need(const char* section, const std::string& key) const {
        const std::string* v = get(key);
        if (!v) throw ConfigError(std::string("[") + section + "] missing required key '" + key + "'");
        return *v;
    }
};

void reject_unknown(const char* section, const Section& sec,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : sec.kv) {
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError(std::string("[") + section + "] unknown key '" + key + "'");
    }
}

SimulateConfig build_simulate(const Section& sec) {
    reject_unknown("simulate", sec,
                   {"n", "k", "ell", "lambda", "beta", "encoding", "code-id", "N",
                    "channel", "gamma", "seed", "reservoir-capacity"});
    SimulateConfig c;
    c.n = parse_uint("n", sec.need("simulate", "n"));
    c.k = parse_uint("k", sec.need("simulate", "k"));
    c.ell = parse_uint("ell", sec.need("simulate", "ell"));
    c.lambda = parse_uint("lambda", sec.need("simulate", "lambda"));
    c.beta = parse_double("beta", sec.need("simulate", "beta"));
    c.encoding = encoding_from_name(sec.need("simulate", "encoding"));
    c.code_id = sec.need("simulate", "code-id");
    c.rounds = parse_uint("N", sec.need("simulate", "N"));
    c.channel = canon_channel("channel", sec.need("simulate", "channel"));
    if (const std::string* v = sec.get("gamma")) {
        if (c.channel != "bsc") throw ConfigError("gamma only applies to the bsc channel");
        c.gamma = parse_double("gamma", *v);
    } else if (c.channel == "bsc") {
        throw ConfigError("channel bsc requires gamma");
    }
    if (const std::string* v = sec.get("seed")) c.seed = parse_u64("seed", *v);
    if (const std::string* v = sec.get("reservoir-capacity")) {
        c.reservoir_capacity = parse_u64("reservoir-capacity", *v);
    }
    return c;
}

RatesConfig build_rates(const Section& sec) {
    reject_unknown("rates", sec, {"beta-min", "beta-max", "points", "encoding"});
    RatesConfig c;
    if (const std::string* v = sec.get("beta-min")) c.beta_min = parse_double("beta-min", *v);
    if (const std::string* v = sec.get("beta-max")) c.beta_max = parse_double("beta-max", *v);
    if (const std::string* v = sec.get("points")) c.points = parse_uint("points", *v);
    if (const std::string* v = sec.get("encoding")) {
        if (*v != "4state" && *v != "6state" && *v != "both") {
            throw ConfigError("rates encoding must be 4state, 6state, or both");
        }
        c.encoding = *v;
    }
    if (!(c.beta_min >= 0.0 && c.beta_min <= c.beta_max && c.beta_max <= 0.25)) {
        throw ConfigError("rates grid must satisfy 0 <= beta-min <= beta-max <= 0.25");
    }
    if (c.points < 2) throw ConfigError("rates grid needs at least 2 points");
    return c;
}

AttackConfig build_attack(const Section& sec) {
    reject_unknown("attack", sec,
                   {"encoding", "code-id", "channel", "gamma", "qubits", "N", "seed"});
    AttackConfig c;
    c.encoding = encoding_from_name(sec.need("attack", "encoding"));
    c.code_id = sec.need("attack", "code-id");
    if (const std::string* v = sec.get("channel")) c.channel = canon_channel("channel", *v);
    if (const std::string* v = sec.get("gamma")) {
        if (c.channel != "bsc") throw ConfigError("gamma only applies to the bsc channel");
        c.gamma = parse_double("gamma", *v);
    } else if (c.channel == "bsc") {
        throw ConfigError("channel bsc requires gamma");
    }
    c.qubits = parse_u64("qubits", sec.need("attack", "qubits"));
    c.rounds = parse_uint("N", sec.need("attack", "N"));
    if (c.qubits == 0 || c.rounds == 0) throw ConfigError("attack needs qubits > 0 and N > 0");
    if (const std::string* v = sec.get("seed")) c.seed = parse_u64("seed", *v);
    return c;
}

void fmt_double(std::string& out, const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
}

} // namespace

ProtocolParams SimulateConfig::params() const {
    CodeSpec code = CodeSpec::from_registry(code_id);
    return ProtocolParams::make(n, k, ell, lambda, beta, encoding, std::move(code), rounds);
}

ChannelModel SimulateConfig::channel_model() const { return build_channel(channel, gamma); }

std::string SimulateConfig::dump() const {
    std::string out = "[simulate]\n";
    out += "n = " + std::to_string(n) + "\n";
    out += "k = " + std::to_string(k) + "\n";
    out += "ell = " + std::to_string(ell) + "\n";
    out += "lambda = " + std::to_string(lambda) + "\n";
    fmt_double(out, "beta", beta);
    out += std::string("encoding = ") + encoding_name(encoding) + "\n";
    out += "code-id = " + code_id + "\n";
    out += "N = " + std::to_string(rounds) + "\n";
    out += "channel = " + channel + "\n";
    if (channel == "bsc") fmt_double(out, "gamma", gamma);
    if (seed) out += "seed = " + std::to_string(*seed) + "\n";
    if (reservoir_capacity) {
        out += "reservoir-capacity = " + std::to_string(*reservoir_capacity) + "\n";
    }
    return out;
}

std::vector<double> RatesConfig::grid() const {
    std::vector<double> g(points);
    for (unsigned i = 0; i < points; ++i) {
        g[i] = beta_min + (beta_max - beta_min) * double(i) / double(points - 1);
    }
    return g;
}

std::string RatesConfig::dump() const {
    std::string out = "[rates]\n";
    fmt_double(out, "beta-min", beta_min);
    fmt_double(out, "beta-max", beta_max);
    out += "points = " + std::to_string(points) + "\n";
    out += "encoding = " + encoding + "\n";
    return out;
}

ChannelModel AttackConfig::channel_model() const { return build_channel(channel, gamma); }

std::string AttackConfig::dump() const {
    std::string out = "[attack]\n";
    out += std::string("encoding = ") + encoding_name(encoding) + "\n";
    out += "code-id = " + code_id + "\n";
    out += "channel = " + channel + "\n";
    if (channel == "bsc") fmt_double(out, "gamma", gamma);
    out += "qubits = " + std::to_string(qubits) + "\n";
    out += "N = " + std::to_string(rounds) + "\n";
    if (seed) out += "seed = " + std::to_string(*seed) + "\n";
    return out;
}

std::string RunConfig::dump() const {
    std::string out;
    if (simulate) out += simulate->dump();
    if (rates) {
        if (!out.empty()) out += "\n";
        out += rates->dump();
    }
    if (attack) {
        if (!out.empty()) out += "\n";
        out += attack->dump();
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    unsigned lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            }
            current = trim(line.substr(1, line.size() - 2));
            if (current != "simulate" && current != "rates" && current != "attack") {
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                                  current + "]");
            }
            Section& sec = sections[current];
            if (sec.seen) {
                throw ConfigError("line " + std::to_string(lineno) + ": duplicate section [" +
                                  current + "]");
            }
            sec.seen = true;
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        if (current.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        Section& sec = sections[current];
        if (sec.kv.count(key)) {
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        sec.kv[key] = value;
    }

    RunConfig cfg;
    if (auto it = sections.find("simulate"); it != sections.end()) {
        cfg.simulate = build_simulate(it->second);
    }
    if (auto it = sections.find("rates"); it != sections.end()) {
        cfg.rates = build_rates(it->second);
    }
    if (auto it = sections.find("attack"); it != sections.end()) {
        cfg.attack = build_attack(it->second);
    }
    if (!cfg.simulate && !cfg.rates && !cfg.attack) {
        throw ConfigError("config defines no [simulate], [rates], or [attack] section");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace krue
