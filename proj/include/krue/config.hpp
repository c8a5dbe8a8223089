// Structured-text run configuration: one section per subcommand, flat
// key=value lines inside.  Unknown sections and keys are rejected so a typo
// cannot silently change a run.  dump() emits canonical text that reloads to
// an identical configuration.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "krue/channel.hpp"
#include "krue/protocol.hpp"

namespace krue {

struct SimulateConfig {
    unsigned n = 0;
    unsigned k = 0;
    unsigned ell = 0;
    unsigned lambda = 0;
    double beta = 0.0;
    Encoding encoding = Encoding::FourState;
    std::string code_id;
    unsigned rounds = 0; // config key "N"
    std::string channel = "ideal";
    double gamma = 0.0; // only with channel = bsc
    std::optional<uint64_t> seed;
    std::optional<uint64_t> reservoir_capacity;

    ProtocolParams params() const;
    ChannelModel channel_model() const;
    std::string dump() const;
};

struct RatesConfig {
    double beta_min = 0.0;
    double beta_max = 0.25;
    unsigned points = 101;
    std::string encoding = "both"; // 4state | 6state | both

    std::vector<double> grid() const;
    std::string dump() const;
};

struct AttackConfig {
    Encoding encoding = Encoding::FourState;
    std::string code_id;
    std::string channel = "intercept-resend"; // or none/ideal, bsc
    double gamma = 0.0;
    uint64_t qubits = 0;  // transmissions used to estimate the flip rate
    unsigned rounds = 0;  // decode trials, config key "N"
    std::optional<uint64_t> seed;

    ChannelModel channel_model() const;
    std::string dump() const;
};

// A file may configure several subcommands; each section appears at most once.
struct RunConfig {
    std::optional<SimulateConfig> simulate;
    std::optional<RatesConfig> rates;
    std::optional<AttackConfig> attack;

    std::string dump() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

const char* encoding_name(Encoding enc);
Encoding encoding_from_name(const std::string& name);

} // namespace krue
