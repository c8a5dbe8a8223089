// Command-line front end: deterministic protocol simulation, rate tables,
// attack measurements, and an embedded selftest.  Exit codes: 0 ok,
// 1 selftest failure, 2 configuration error, 3 key reservoir exhaustion.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "krue/analysis.hpp"
#include "krue/channel.hpp"
#include "krue/config.hpp"
#include "krue/ecc.hpp"
#include "krue/errors.hpp"
#include "krue/gf2.hpp"
#include "krue/invhash.hpp"
#include "krue/mac.hpp"
#include "krue/protocol.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitConfig = 2;
constexpr int kExitExhausted = 3;

struct CliArgs {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out_path;
    bool dump_config = false;
};

void write_output(const std::string& out_path, const std::string& text,
                  const std::string& stdout_summary) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw krue::ConfigError("cannot open output file: " + out_path);
    out << text;
    if (!stdout_summary.empty()) std::fputs(stdout_summary.c_str(), stdout);
}

uint64_t require_seed(const CliArgs& args, const std::optional<uint64_t>& cfg_seed) {
    if (args.seed) return *args.seed;
    if (cfg_seed) return *cfg_seed;
    throw krue::ConfigError("a seed is required: pass --seed or set seed in the config");
}

int cmd_simulate(const CliArgs& args) {
    if (args.config_path.empty()) {
        throw krue::ConfigError("simulate requires --config");
    }
    krue::RunConfig run = krue::load_config(args.config_path);
    if (!run.simulate) throw krue::ConfigError("config has no [simulate] section");
    krue::SimulateConfig cfg = *run.simulate;
    uint64_t seed = require_seed(args, cfg.seed);
    cfg.seed = seed;
    if (args.dump_config) {
        std::fputs(cfg.dump().c_str(), stdout);
        return kExitOk;
    }
    krue::ProtocolParams params = cfg.params();
    krue::ChannelModel channel = cfg.channel_model();

    uint64_t capacity = cfg.reservoir_capacity.value_or(krue::KeyReservoir::kUnlimited);
    krue::Session session(params, channel, seed, capacity);
    krue::RandomStream msg_rng(krue::derive_seed(seed, 3));
    std::vector<krue::Bitstring> messages;
    messages.reserve(params.rounds());
    for (unsigned i = 0; i < params.rounds(); ++i) {
        messages.push_back(msg_rng.bits(params.mu_len()));
    }
    krue::SessionReport report = session.run(messages);

    char summary[160];
    std::snprintf(summary, sizeof summary,
                  "# summary accept_rate=%.10g msgs_recovered=%u reservoir_bits=%llu\n",
                  report.accept_rate, report.recovered_count,
                  (unsigned long long)(report.initial_draw_bits + report.round_draw_bits));
    write_output(args.out_path, report.to_csv() + summary, summary);
    return kExitOk;
}

int cmd_rates(const CliArgs& args) {
    krue::RatesConfig cfg;
    if (!args.config_path.empty()) {
        krue::RunConfig run = krue::load_config(args.config_path);
        if (run.rates) cfg = *run.rates;
    }
    if (args.dump_config) {
        std::fputs(cfg.dump().c_str(), stdout);
        return kExitOk;
    }
    std::vector<double> grid = cfg.grid();
    std::string csv;
    if (cfg.encoding == "4state" || cfg.encoding == "both") {
        csv += krue::rate_table_csv(grid, krue::Encoding::FourState);
    }
    if (cfg.encoding == "6state" || cfg.encoding == "both") {
        std::string six = krue::rate_table_csv(grid, krue::Encoding::SixState);
        if (!csv.empty()) six.erase(0, six.find('\n') + 1); // drop repeated header
        csv += six;
    }
    write_output(args.out_path, csv, "");
    return kExitOk;
}

int cmd_attack(const CliArgs& args) {
    if (args.config_path.empty()) {
        throw krue::ConfigError("attack requires --config");
    }
    krue::RunConfig run = krue::load_config(args.config_path);
    if (!run.attack) throw krue::ConfigError("config has no [attack] section");
    krue::AttackConfig cfg = *run.attack;
    uint64_t seed = require_seed(args, cfg.seed);
    cfg.seed = seed;
    if (args.dump_config) {
        std::fputs(cfg.dump().c_str(), stdout);
        return kExitOk;
    }
    krue::CodeSpec code = krue::CodeSpec::from_registry(cfg.code_id);
    krue::ChannelModel channel = cfg.channel_model();
    unsigned bases = krue::basis_count(cfg.encoding);

    // Flip-rate measurement: random payload bits, random shared bases.
    krue::RandomStream data_rng(krue::derive_seed(seed, 0));
    krue::RandomStream chan_rng(krue::derive_seed(seed, 1));
    uint64_t flips = 0;
    uint64_t remaining = cfg.qubits;
    while (remaining > 0) {
        size_t chunk = size_t(std::min<uint64_t>(remaining, 4096));
        krue::Bitstring x = data_rng.bits(chunk);
        std::vector<uint8_t> bvec(chunk);
        for (size_t i = 0; i < chunk; ++i) {
            bvec[i] = uint8_t(data_rng.below(bases));
        }
        krue::BasisSeq b(cfg.encoding, std::move(bvec));
        krue::Bitstring y = krue::transmit(x, b, channel, chan_rng);
        flips += (x ^ y).weight();
        remaining -= chunk;
    }
    double measured_flip = double(flips) / double(cfg.qubits);
    double predicted_flip = krue::induced_error_rate(channel, cfg.encoding);

    // Reject-fraction measurement at the decoder: a trial is rejected when the
    // received word no longer decodes to the transmitted message.
    krue::RandomStream trial_rng(krue::derive_seed(seed, 2));
    unsigned rejects = 0;
    for (unsigned i = 0; i < cfg.rounds; ++i) {
        krue::Bitstring p = trial_rng.bits(code.k());
        krue::Bitstring x = krue::encode(code, p);
        std::vector<uint8_t> bvec(code.n());
        for (size_t j = 0; j < bvec.size(); ++j) {
            bvec[j] = uint8_t(trial_rng.below(bases));
        }
        krue::BasisSeq b(cfg.encoding, std::move(bvec));
        krue::Bitstring y = krue::transmit(x, b, channel, chan_rng);
        auto dec = krue::decode(code, y);
        if (!dec || dec->message != p) ++rejects;
    }
    double reject_fraction = double(rejects) / double(cfg.rounds);
    double predicted_reject =
        1.0 - krue::p_corr(code.n(), double(code.t()) / double(code.n()), predicted_flip);

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "encoding = %s\n"
                  "channel = %s\n"
                  "code-id = %s\n"
                  "qubits = %llu\n"
                  "measured_flip_rate = %.6f\n"
                  "predicted_flip_rate = %.6f\n"
                  "rounds = %u\n"
                  "reject_fraction = %.6f\n"
                  "predicted_reject = %.6f\n",
                  krue::encoding_name(cfg.encoding), cfg.channel.c_str(),
                  cfg.code_id.c_str(), (unsigned long long)cfg.qubits, measured_flip,
                  predicted_flip, cfg.rounds, reject_fraction, predicted_reject);
    write_output(args.out_path, buf, "");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Selftest: exhaustive small-parameter property suites.  Everything below is
// deterministic; any failure names its suite and exits 1.

bool field_axioms_suite(std::string& why) {
    using namespace krue;
    // Exhaustive inverses for nu in [1, 8].
    for (unsigned nu = 1; nu <= 8; ++nu) {
        FieldSpec F = FieldSpec::standard(nu);
        FieldElement one = FieldElement::one(F);
        for (uint64_t a = 1; a < (1ull << nu); ++a) {
            FieldElement x = FieldElement::from_uint(F, a);
            if (mul(x, inv(x)) != one) {
                why = "inverse failed at nu=" + std::to_string(nu);
                return false;
            }
        }
    }
    // Exhaustive ring axioms at nu = 4.
    FieldSpec F = FieldSpec::standard(4);
    for (uint64_t a = 0; a < 16; ++a) {
        for (uint64_t b = 0; b < 16; ++b) {
            FieldElement x = FieldElement::from_uint(F, a);
            FieldElement y = FieldElement::from_uint(F, b);
            if (mul(x, y) != mul(y, x)) {
                why = "commutativity failed at nu=4";
                return false;
            }
            for (uint64_t c = 0; c < 16; ++c) {
                FieldElement z = FieldElement::from_uint(F, c);
                if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
                    why = "associativity failed at nu=4";
                    return false;
                }
                if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) {
                    why = "distributivity failed at nu=4";
                    return false;
                }
            }
        }
    }
    // Pinned product guards the reduction-polynomial table.
    FieldElement p = mul(FieldElement::from_uint(F, 0b0010), FieldElement::from_uint(F, 0b1001));
    if (p.bits().to_uint() != 0b0001) {
        why = "pinned GF(16) product mismatch (reduction polynomial table corrupted?)";
        return false;
    }
    return true;
}

bool hash_family_suite(std::string& why) {
    using namespace krue;
    FieldSpec F = FieldSpec::standard(4);
    // Exhaustive inversion identity at nu = 4 across every prefix length.
    for (uint64_t useed = 1; useed < 16; ++useed) {
        FieldElement u = FieldElement::from_uint(F, useed);
        for (unsigned ell = 1; ell <= 4; ++ell) {
            for (uint64_t c = 0; c < (1ull << ell); ++c) {
                for (uint64_t r = 0; r < (1ull << (4 - ell)); ++r) {
                    Bitstring cb = Bitstring::from_uint(c, ell);
                    Bitstring rb = Bitstring::from_uint(r, 4 - ell);
                    if (pa(u, invert(u, cb, rb), ell) != cb) {
                        why = "inversion identity failed at nu=4";
                        return false;
                    }
                }
            }
        }
    }
    // Exact XOR-universality census at nu = 4, ell = 2: over nonzero keys,
    // every output difference delta occurs 2^{nu-ell} times, minus one when
    // delta = 0 (the key u = 0 is excluded from the family).
    const unsigned ell = 2;
    for (uint64_t xa = 0; xa < 16; ++xa) {
        for (uint64_t xb = 0; xb < 16; ++xb) {
            if (xa == xb) continue;
            Bitstring x1 = Bitstring::from_uint(xa, 4);
            Bitstring x2 = Bitstring::from_uint(xb, 4);
            unsigned counts[4] = {0, 0, 0, 0};
            for (uint64_t useed = 1; useed < 16; ++useed) {
                FieldElement u = FieldElement::from_uint(F, useed);
                uint64_t d = (pa(u, x1, ell) ^ pa(u, x2, ell)).to_uint();
                counts[d]++;
            }
            for (uint64_t d = 0; d < 4; ++d) {
                unsigned expect = (d == 0) ? 3 : 4;
                if (counts[d] != expect) {
                    why = "xor-universality census failed at nu=4, ell=2";
                    return false;
                }
            }
        }
    }
    return true;
}

bool decode_bruteforce_suite(std::string& why) {
    using namespace krue;
    // Every received word of the 7-bit single-error-correcting code.
    CodeSpec ham = CodeSpec::hamming74();
    for (uint64_t w = 0; w < (1ull << 7); ++w) {
        Bitstring r = Bitstring::from_uint(w, 7);
        auto fast = decode(ham, r);
        auto slow = brute_force_decode(ham, r);
        if (fast.has_value() != slow.has_value()) {
            why = "decode/brute-force disagreement on the 7-bit code";
            return false;
        }
        if (fast) {
            unsigned dist = unsigned((encode(ham, *slow) ^ r).weight());
            if (fast->message != *slow || fast->corrected != dist) {
                why = "decode/brute-force mismatch on the 7-bit code";
                return false;
            }
        }
    }
    // Identity code passes received words through untouched.
    CodeSpec ident = CodeSpec::identity(12);
    RandomStream rng(424242);
    for (int i = 0; i < 200; ++i) {
        Bitstring r = rng.bits(12);
        auto fast = decode(ident, r);
        if (!fast || fast->message != r || fast->corrected != 0) {
            why = "identity code decode mismatch";
            return false;
        }
    }
    return true;
}

bool pcorr_enum_suite(std::string& why) {
    using namespace krue;
    const double pairs[3][2] = {{0.10, 0.05}, {0.25, 0.10}, {0.50, 0.30}};
    for (unsigned n : {8u, 12u, 16u}) {
        for (const auto& pr : pairs) {
            double beta = pr[0], gamma = pr[1];
            unsigned limit = floor_nbeta(n, beta);
            double brute = 0.0;
            for (uint64_t pat = 0; pat < (1ull << n); ++pat) {
                unsigned w = unsigned(std::popcount(pat));
                if (w <= limit) {
                    brute += std::pow(gamma, w) * std::pow(1.0 - gamma, double(n - w));
                }
            }
            double fast = p_corr(n, beta, gamma);
            if (std::fabs(fast - brute) > 1e-12) {
                why = "p_corr enumeration mismatch at n=" + std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

int cmd_selftest() {
    struct Suite {
        const char* name;
        bool (*fn)(std::string&);
    };
    const Suite suites[] = {
        {"field-axioms", field_axioms_suite},
        {"hash-family", hash_family_suite},
        {"decode-bruteforce", decode_bruteforce_suite},
        {"pcorr-enumeration", pcorr_enum_suite},
    };
    bool all_ok = true;
    for (const Suite& s : suites) {
        std::string why;
        bool ok = s.fn(why);
        std::printf("%-20s %s%s%s\n", s.name, ok ? "pass" : "FAIL", ok ? "" : ": ",
                    why.c_str());
        if (!ok) all_ok = false;
    }
    return all_ok ? kExitOk : kExitSelftest;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"krue: unclonable encryption with key recycling, simulated"};
    app.require_subcommand(1);

    CliArgs sim_args, rates_args, attack_args;

    CLI::App* sim = app.add_subcommand("simulate", "Run a multi-round protocol session");
    sim->add_option("--config", sim_args.config_path, "Run configuration file");
    sim->add_option("--seed", sim_args.seed, "Seed (overrides the config)");
    sim->add_option("--out", sim_args.out_path, "Write the session CSV here");
    sim->add_flag("--dump-config", sim_args.dump_config, "Echo the effective config and exit");

    CLI::App* rates = app.add_subcommand("rates", "Emit the asymptotic rate table CSV");
    rates->add_option("--config", rates_args.config_path, "Run configuration file");
    rates->add_option("--out", rates_args.out_path, "Write the rate CSV here");
    rates->add_flag("--dump-config", rates_args.dump_config, "Echo the effective config and exit");

    CLI::App* attack = app.add_subcommand("attack", "Measure channel disturbance and rejection");
    attack->add_option("--config", attack_args.config_path, "Run configuration file");
    attack->add_option("--seed", attack_args.seed, "Seed (overrides the config)");
    attack->add_option("--out", attack_args.out_path, "Write the attack report here");
    attack->add_flag("--dump-config", attack_args.dump_config, "Echo the effective config and exit");

    CLI::App* selftest = app.add_subcommand("selftest", "Run embedded property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (rates->parsed()) return cmd_rates(rates_args);
        if (attack->parsed()) return cmd_attack(attack_args);
        if (selftest->parsed()) return cmd_selftest();
    } catch (const krue::ReservoirExhausted& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitExhausted;
    } catch (const krue::RateExhausted& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitExhausted;
    } catch (const krue::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}
