// Acceptance gate: ten numbered criteria, one PASS/FAIL line each, every
// tolerance checked as stated.  Criteria that cannot hold are run faithfully
// and reported FAIL with the blocking reason; indented "evidence" lines then
// demonstrate the nearest attainable property so the failure is isolated to
// the stated parameters, not the machinery.
//
// Usage: krue_acceptance [--expect 1,2,...]
//   Without --expect, exit code = number of failed criteria.
//   With --expect, exit 0 iff the set of passing criteria matches the list
//   exactly (used by the test harness to pin the documented outcome).
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "krue/analysis.hpp"
#include "krue/channel.hpp"
#include "krue/ecc.hpp"
#include "krue/errors.hpp"
#include "krue/gf2.hpp"
#include "krue/invhash.hpp"
#include "krue/protocol.hpp"

using namespace krue;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> evidence = {};
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
// The krue and qkr_gottesman rate curves cross near beta = 0.052; bisection
// must land within 0.052 +/- 0.001 in under a second.
Outcome criterion_rate_crossover() {
    auto t0 = Clock::now();
    auto cross = crossover(Scheme::Krue, Scheme::QkrGottesman, Encoding::FourState);
    if (!cross) return {false, "no crossover found in (0, 0.25]"};

    // The gap changes sign across the crossover.
    double before = scheme_rate(*cross - 1e-3, Encoding::FourState, Scheme::Krue) -
                    scheme_rate(*cross - 1e-3, Encoding::FourState, Scheme::QkrGottesman);
    double after = scheme_rate(*cross + 1e-3, Encoding::FourState, Scheme::Krue) -
                   scheme_rate(*cross + 1e-3, Encoding::FourState, Scheme::QkrGottesman);
    double dt = seconds_since(t0);
    bool ok = std::fabs(*cross - 0.052) <= 1e-3 && before * after < 0 && dt < 1.0;
    return {ok, fmt("crossover = %.7f (target 0.052 +/- 0.001), gap %+.4f -> %+.4f, %.2fs",
                    *cross, before, after, dt)};
}

// ---------------------------------------------------------------- criterion 2
// Exact scheme identities on a 100-point grid, tolerance 1e-12 on the raw
// rate formulas.  The half-rate relation between the Gottesman combination
// and the KrueStar combination is a 2-basis statement (with 3 bases the
// denominators differ), so it is checked under the 2-basis encoding; the
// other three identities are encoding-independent and checked under both.
Outcome criterion_rate_identities() {
    auto t0 = Clock::now();
    double worst = 0.0;
    for (Encoding enc : {Encoding::FourState, Encoding::SixState}) {
        for (int i = 0; i < 100; ++i) {
            double beta = 0.25 * double(i) / 99.0;
            double qkd_otp = scheme_rate(beta, enc, Scheme::QkdOtp);
            double qkr = scheme_rate(beta, enc, Scheme::Qkr);
            double qkd_star = scheme_rate(beta, enc, Scheme::QkdKrueStar);
            double qkr_star = scheme_rate(beta, enc, Scheme::QkrKrueStar);
            double krue = scheme_rate(beta, enc, Scheme::Krue);
            worst = std::max(worst, std::fabs(qkd_otp - qkr));
            worst = std::max(worst, std::fabs(qkd_star - qkr_star));
            worst = std::max(worst, std::fabs(krue - (qkd_otp - entropy(beta))));
            if (enc == Encoding::FourState) {
                double qkr_gott = scheme_rate(beta, enc, Scheme::QkrGottesman);
                worst = std::max(worst, std::fabs(qkr_gott - 0.5 * qkd_star));
            }
        }
    }
    double dt = seconds_since(t0);
    bool ok = worst <= 1e-12 && dt < 1.0;
    return {ok, fmt("4 identities, 100 points (half-rate relation under 2 bases): "
                    "worst |gap| = %.2e, %.2fs",
                    worst, dt)};
}

// ---------------------------------------------------------------- criterion 3
// Mask-length thresholds: the unclonability threshold never exceeds the
// recycling threshold, with equality exactly at beta = 0.
Outcome criterion_threshold_order() {
    for (Encoding enc : {Encoding::FourState, Encoding::SixState}) {
        for (int i = 0; i < 100; ++i) {
            double beta = 0.25 * double(i) / 99.0;
            RateReport rep = rates(beta, enc);
            if (rep.ell_max_ue > rep.ell_max_kr + 1e-15) {
                return {false, fmt("ordering violated at beta=%.4f (%s)", beta,
                                   enc == Encoding::FourState ? "4state" : "6state")};
            }
            bool equal = std::fabs(rep.ell_max_ue - rep.ell_max_kr) < 1e-15;
            if (beta == 0.0 && !equal) {
                return {false, "thresholds differ at beta = 0"};
            }
            if (beta > 0.0 && equal && rep.ell_max_kr > 0.0) {
                return {false, fmt("thresholds coincide at beta=%.4f > 0", beta)};
            }
        }
    }
    return {true, "ue threshold <= kr threshold at all 100 points, both encodings; "
                  "equality only at beta = 0"};
}

// ---------------------------------------------------------------- criterion 4
// The closed-form correctable-fraction probability equals exhaustive
// error-pattern enumeration at n in {8, 12, 16}, 20 random pairs each.
Outcome criterion_pcorr_oracle() {
    auto t0 = Clock::now();
    RandomStream rng(20260816);
    double worst = 0.0;
    for (unsigned n : {8u, 12u, 16u}) {
        for (int i = 0; i < 20; ++i) {
            double beta = double(rng.below(10000)) / 9999.0;
            double gamma = double(rng.below(10000)) / 9999.0;
            unsigned limit = unsigned(std::floor(double(n) * beta + 1e-9));
            double brute = 0.0;
            for (uint64_t pat = 0; pat < (1ull << n); ++pat) {
                unsigned w = unsigned(std::popcount(pat));
                if (w <= limit) {
                    brute += std::pow(gamma, w) * std::pow(1.0 - gamma, double(n - w));
                }
            }
            worst = std::max(worst, std::fabs(p_corr(n, beta, gamma) - brute));
        }
    }
    double dt = seconds_since(t0);
    bool ok = worst <= 1e-12 && dt < 30.0;
    return {ok, fmt("60 random (beta, gamma) pairs: worst |gap| = %.2e, %.2fs", worst, dt)};
}

// Helper: many short sessions over one channel; checks sync + recovery.
struct SessionStats {
    unsigned rounds = 0;
    unsigned accepts = 0;
    unsigned recovered = 0;
    bool always_synced = true;
};

SessionStats run_sessions(const ProtocolParams& params, const ChannelModel& channel,
                          unsigned sessions, unsigned rounds_each, uint64_t seed0) {
    SessionStats st;
    for (unsigned s = 0; s < sessions; ++s) {
        Session session(params, channel, seed0 + s);
        RandomStream msgrng(derive_seed(seed0 + s, 99));
        for (unsigned r = 0; r < rounds_each; ++r) {
            RoundRecord rec = session.run_round(msgrng.bits(params.mu_len()));
            ++st.rounds;
            st.accepts += rec.omega;
            st.recovered += rec.recovered;
            st.always_synced &= session.alice_keys() == session.bob_keys();
        }
    }
    return st;
}

// ---------------------------------------------------------------- criterion 5
// End-to-end over an ideal channel with the [15,7] code.  The round layout
// requires ell > (n-k) + 2*lambda + 1 = 8 + 17 = 25 while ell <= k = 7, so
// the configuration cannot exist; reported as stated, with the same
// end-to-end property demonstrated on the smallest feasible code.
Outcome criterion_ideal_sessions() {
    Outcome out;
    try {
        ProtocolParams::make(15, 7, 7, 8, 2.0 / 15.0, Encoding::FourState,
                             CodeSpec::from_registry("bch15_7"), 10);
        out.pass = false;
        out.detail = "[15,7] parameters unexpectedly constructed";
        return out;
    } catch (const ParamError& e) {
        out.pass = false;
        out.detail = fmt("[15,7] cannot host a round: %s "
                         "(needs ell > 25 but ell <= k = 7; any two-parity-per-data-bit "
                         "code with lambda >= 8 needs 2k - n >= 2*lambda + 2)",
                         e.what());
    }
    // Same property on the smallest feasible registry code.
    ProtocolParams params = ProtocolParams::make(126, 72, 72, 8, 1.0 / 126.0,
                                                 Encoding::FourState,
                                                 CodeSpec::from_registry("hamming74x18"), 5);
    auto t0 = Clock::now();
    SessionStats st = run_sessions(params, ChannelModel::ideal(), 1000, 5, 5000);
    out.evidence.push_back(
        fmt("evidence: hamming74x18, 1000 ideal sessions x 5 rounds: accept %u/%u, "
            "recovered %u/%u, key bundles synced every round: %s (%.1fs)",
            st.accepts, st.rounds, st.recovered, st.rounds,
            st.always_synced ? "yes" : "NO", seconds_since(t0)));
    bool demo_ok = st.accepts == st.rounds && st.recovered == st.rounds && st.always_synced;
    out.evidence.push_back(fmt("evidence verdict: %s", demo_ok ? "holds" : "FAILS"));
    return out;
}

// ---------------------------------------------------------------- criterion 6
// Accept statistics under bsc(0.05) with the [63,30] code, 10^4 rounds,
// within 3 binomial sigma of p_corr(63, 6/63, 0.05).  The protocol cannot
// run on [63,30] (same structural bound as criterion 5), so the statistic
// is demonstrated at the decoder and on the feasible code.
Outcome criterion_noisy_accept() {
    Outcome out;
    try {
        ProtocolParams::make(63, 30, 30, 8, 6.0 / 63.0, Encoding::FourState,
                             CodeSpec::from_registry("bch63_30"), 10000);
        out.pass = false;
        out.detail = "[63,30] parameters unexpectedly constructed";
        return out;
    } catch (const ParamError&) {
        out.pass = false;
        out.detail = "[63,30] cannot host a round: needs ell > 50 even at the minimum "
                     "lambda = 8, but ell <= k = 30";
    }

    auto t0 = Clock::now();
    // Decoder-level statistic on the stated code: fraction of bsc(0.05)
    // error patterns the bounded-distance decoder corrects.
    {
        CodeSpec code = CodeSpec::from_registry("bch63_30");
        ChannelModel chan = ChannelModel::bsc(0.05);
        RandomStream data_rng(61), chan_rng(62);
        const unsigned trials = 10000;
        unsigned good = 0;
        for (unsigned i = 0; i < trials; ++i) {
            Bitstring p = data_rng.bits(30);
            Bitstring x = encode(code, p);
            std::vector<uint8_t> bv(63);
            for (auto& b : bv) b = uint8_t(data_rng.below(2));
            Bitstring y = transmit(x, BasisSeq(Encoding::FourState, std::move(bv)), chan,
                                   chan_rng);
            auto dec = decode(code, y);
            good += dec && dec->message == p;
        }
        double expect = p_corr(63, 6.0 / 63.0, 0.05);
        double sigma = std::sqrt(expect * (1 - expect) / trials);
        double got = double(good) / trials;
        bool ok = std::fabs(got - expect) <= 3 * sigma;
        out.evidence.push_back(
            fmt("evidence: [63,30] decoder, 10^4 bsc(0.05) rounds: corrected %.4f, "
                "predicted %.4f +/- %.4f (3 sigma): %s",
                got, expect, 3 * sigma, ok ? "holds" : "FAILS"));
    }
    // Full-protocol statistic on the feasible code.
    {
        ProtocolParams params = ProtocolParams::make(
            126, 72, 72, 8, 1.0 / 126.0, Encoding::FourState,
            CodeSpec::from_registry("hamming74x18"), 10000);
        Session session(params, ChannelModel::bsc(0.002), 606);
        RandomStream msgrng(607);
        unsigned accepts = 0;
        for (int i = 0; i < 10000; ++i) accepts += session.run_round(msgrng.bits(1)).omega;
        double expect = p_corr(126, 1.0 / 126.0, 0.002);
        double sigma = std::sqrt(expect * (1 - expect) / 10000.0);
        double got = accepts / 10000.0;
        bool ok = std::fabs(got - expect) <= 3 * sigma;
        out.evidence.push_back(
            fmt("evidence: hamming74x18 protocol, 10^4 bsc(0.002) rounds: accept %.4f, "
                "predicted %.4f +/- %.4f (3 sigma): %s (%.1fs total)",
                got, expect, 3 * sigma, ok ? "holds" : "FAILS", seconds_since(t0)));
    }
    return out;
}

// ---------------------------------------------------------------- criterion 7
// Intercept-resend on the [63,30] code: reject fraction within 3 sigma of
// 1 - p_corr(63, 6/63, 1/4), and that bound claimed to exceed 0.999.
Outcome criterion_disturbance() {
    auto t0 = Clock::now();
    CodeSpec code = CodeSpec::from_registry("bch63_30");
    ChannelModel eve = ChannelModel::intercept_resend();
    RandomStream data_rng(71), chan_rng(72);
    const unsigned trials = 10000;
    unsigned rejects = 0;
    for (unsigned i = 0; i < trials; ++i) {
        Bitstring p = data_rng.bits(30);
        Bitstring x = encode(code, p);
        std::vector<uint8_t> bv(63);
        for (auto& b : bv) b = uint8_t(data_rng.below(2));
        Bitstring y = transmit(x, BasisSeq(Encoding::FourState, std::move(bv)), eve, chan_rng);
        auto dec = decode(code, y);
        rejects += !(dec && dec->message == p);
    }
    double predicted = 1.0 - p_corr(63, 6.0 / 63.0, 0.25);
    double sigma = std::sqrt(predicted * (1 - predicted) / trials);
    double got = double(rejects) / trials;
    bool within = std::fabs(got - predicted) <= 3 * sigma;
    bool exceeds = predicted > 0.999;
    double dt = seconds_since(t0);

    Outcome out;
    out.pass = within && exceeds;
    out.detail = fmt("reject %.6f vs predicted %.6f +/- %.6f (3 sigma): %s; "
                     "predicted > 0.999 claim: %s (true value 0.998235), %.1fs",
                     got, predicted, 3 * sigma, within ? "holds" : "FAILS",
                     exceeds ? "holds" : "FAILS", dt);
    if (!exceeds) {
        out.evidence.push_back(
            "evidence: the measured fraction does match the closed form; only the "
            "stated 0.999 floor is wrong (1 - p_corr(63, 6/63, 1/4) = 0.9982349)");
    }
    return out;
}

// ---------------------------------------------------------------- criterion 8
// (a) strict pairwise independence of the compressed hash at nu=4, ell=2:
//     exactly one seed per (x != x', y, y') cell;
// (b) inversion identity, exhaustive at nu=4 and 10^4 random cases at nu=64.
Outcome criterion_hash_properties() {
    FieldSpec F4 = FieldSpec::standard(4);
    const unsigned ell = 2;

    // (a) Census over every cell.
    uint64_t cells_total = 0, cells_exactly_one = 0;
    unsigned count_min = ~0u, count_max = 0;
    for (uint64_t xa = 0; xa < 16; ++xa) {
        for (uint64_t xb = 0; xb < 16; ++xb) {
            if (xa == xb) continue;
            Bitstring x1 = Bitstring::from_uint(xa, 4);
            Bitstring x2 = Bitstring::from_uint(xb, 4);
            unsigned cells[4][4] = {};
            for (uint64_t useed = 1; useed < 16; ++useed) {
                FieldElement u = FieldElement::from_uint(F4, useed);
                cells[pa(u, x1, ell).to_uint()][pa(u, x2, ell).to_uint()]++;
            }
            for (unsigned y = 0; y < 4; ++y) {
                for (unsigned yp = 0; yp < 4; ++yp) {
                    ++cells_total;
                    cells_exactly_one += cells[y][yp] == 1;
                    count_min = std::min(count_min, cells[y][yp]);
                    count_max = std::max(count_max, cells[y][yp]);
                }
            }
        }
    }
    bool strict_pairwise = cells_exactly_one == cells_total;

    // (b) Inversion identity, every seed, output width, and free-bit fill.
    bool inversion_ok = true;
    for (uint64_t useed = 1; useed < 16 && inversion_ok; ++useed) {
        FieldElement u = FieldElement::from_uint(F4, useed);
        for (unsigned l = 1; l <= 4 && inversion_ok; ++l) {
            for (uint64_t c = 0; c < (1u << l) && inversion_ok; ++c) {
                for (uint64_t r = 0; r < (1u << (4 - l)) && inversion_ok; ++r) {
                    Bitstring cb = Bitstring::from_uint(c, l);
                    Bitstring rb = Bitstring::from_uint(r, 4 - l);
                    inversion_ok = pa(u, invert(u, cb, rb), l) == cb;
                }
            }
        }
    }
    FieldSpec F64 = FieldSpec::standard(64);
    RandomStream rng(808);
    for (int i = 0; i < 10000 && inversion_ok; ++i) {
        Bitstring useed = rng.bits(64);
        if (useed.is_zero()) continue;
        FieldElement u(F64, useed);
        unsigned l = 1 + unsigned(rng.below(64));
        Bitstring c = rng.bits(l);
        Bitstring r = rng.bits(64 - l);
        inversion_ok = pa(u, invert(u, c, r), l) == c;
    }

    Outcome out;
    out.pass = strict_pairwise && inversion_ok;
    out.detail = fmt("(a) one-seed-per-cell: %s (%llu of %llu cells hold exactly one seed, "
                     "counts range %u..%u); (b) inversion identity: %s",
                     strict_pairwise ? "holds" : "FAILS",
                     (unsigned long long)cells_exactly_one, (unsigned long long)cells_total,
                     count_min, count_max, inversion_ok ? "holds" : "FAILS");
    if (!strict_pairwise) {
        out.evidence.push_back(
            "evidence: strict one-per-cell is impossible here: 15 nonzero seeds cannot "
            "cover 16 cells once each, and pairs involving x = 0 pin the output to 0");
        // The property the family does satisfy, exactly.
        bool xor_ok = true;
        for (uint64_t xa = 0; xa < 16 && xor_ok; ++xa) {
            for (uint64_t xb = xa + 1; xb < 16 && xor_ok; ++xb) {
                Bitstring x1 = Bitstring::from_uint(xa, 4);
                Bitstring x2 = Bitstring::from_uint(xb, 4);
                unsigned counts[4] = {};
                for (uint64_t useed = 1; useed < 16; ++useed) {
                    FieldElement u = FieldElement::from_uint(F4, useed);
                    counts[(pa(u, x1, ell) ^ pa(u, x2, ell)).to_uint()]++;
                }
                xor_ok = counts[0] == 3 && counts[1] == 4 && counts[2] == 4 && counts[3] == 4;
            }
        }
        out.evidence.push_back(fmt(
            "evidence: exact xor-universality census: every output difference occurs "
            "2^(nu-ell) = 4 times (3 for zero, excluding the zero seed): %s",
            xor_ok ? "holds" : "FAILS"));
    }
    return out;
}

// ---------------------------------------------------------------- criterion 9
// Payload uniformity: fixed message, fresh per-round randomness, every bit
// of the transmitted word is an empirical coin within 3 sigma over 10^4
// encryptions.
Outcome criterion_payload_uniformity() {
    auto t0 = Clock::now();
    ProtocolParams params = ProtocolParams::make(32, 32, 24, 8, 0.0, Encoding::FourState,
                                                 CodeSpec::identity(32), 1);
    KeyReservoir res(909);
    KeyBundle keys = KeyBundle::draw_initial(params, res);
    RandomStream rng(910);
    Bitstring mu = Bitstring::from_uint(0b1010101, 7);

    const unsigned trials = 10000;
    std::vector<unsigned> ones(32, 0);
    for (unsigned i = 0; i < trials; ++i) {
        EncryptResult enc = alice_encrypt(params, keys, mu, rng);
        for (unsigned j = 0; j < 32; ++j) ones[j] += enc.x[j];
    }
    double sigma = std::sqrt(0.25 / trials);
    double worst = 0.0;
    unsigned worst_bit = 0;
    for (unsigned j = 0; j < 32; ++j) {
        double dev = std::fabs(double(ones[j]) / trials - 0.5);
        if (dev > worst) {
            worst = dev;
            worst_bit = j;
        }
    }
    bool ok = worst <= 3 * sigma;
    return {ok, fmt("32 positions x 10^4 encryptions: worst |freq - 0.5| = %.4f at bit %u "
                    "(3 sigma = %.4f), %.1fs",
                    worst, worst_bit, 3 * sigma, seconds_since(t0))};
}

// --------------------------------------------------------------- criterion 10
// Reservoir accounting over 10^3 rounds with forced verdicts: rejects cost
// exactly ell + lambda + 1 + (n-k) bits, accepts cost zero.
Outcome criterion_recycling_accounting() {
    ProtocolParams params = ProtocolParams::make(126, 72, 72, 8, 1.0 / 126.0,
                                                 Encoding::FourState,
                                                 CodeSpec::from_registry("hamming74x18"), 1);
    KeyReservoir res(1010);
    KeyBundle keys = KeyBundle::draw_initial(params, res);
    RandomStream rng(1011);
    RandomStream verdicts(1012);

    const uint64_t per_reject = 72 + 8 + 1 + 54;
    unsigned rejects = 0;
    uint64_t base = res.consumed();
    bool per_round_exact = true;
    for (int i = 0; i < 1000; ++i) {
        EncryptResult enc = alice_encrypt(params, keys, rng.bits(1), rng);
        bool omega = verdicts.bit();
        uint64_t before = res.consumed();
        keys = key_update(params, keys, omega, enc.pending.kappa, res);
        uint64_t used = res.consumed() - before;
        per_round_exact &= used == (omega ? 0 : per_reject);
        rejects += !omega;
    }
    uint64_t total = res.consumed() - base;
    bool ok = per_round_exact && total == uint64_t(rejects) * per_reject;
    return {ok, fmt("1000 rounds, %u rejects: consumed %llu bits, expected %u x %llu = %llu; "
                    "per-round exactness: %s",
                    rejects, (unsigned long long)total, rejects,
                    (unsigned long long)per_reject,
                    (unsigned long long)(uint64_t(rejects) * per_reject),
                    per_round_exact ? "holds" : "FAILS")};
}

} // namespace

int main(int argc, char** argv) {
    std::optional<std::set<int>> expect;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect") == 0 && i + 1 < argc) {
            expect.emplace();
            std::istringstream in(argv[++i]);
            std::string tok;
            while (std::getline(in, tok, ',')) expect->insert(std::stoi(tok));
        }
    }

    struct Criterion {
        const char* name;
        Outcome (*fn)();
    };
    const Criterion criteria[] = {
        {"rate crossover near 0.052", criterion_rate_crossover},
        {"scheme rate identities to 1e-12", criterion_rate_identities},
        {"threshold ordering ue <= kr", criterion_threshold_order},
        {"p_corr equals exhaustive enumeration", criterion_pcorr_oracle},
        {"ideal-channel sessions on [15,7]", criterion_ideal_sessions},
        {"noisy accept statistics on [63,30]", criterion_noisy_accept},
        {"disturbance detection on [63,30]", criterion_disturbance},
        {"hash pairwise independence and inversion", criterion_hash_properties},
        {"payload uniformity", criterion_payload_uniformity},
        {"key-recycling reservoir accounting", criterion_recycling_accounting},
    };

    std::set<int> passed;
    int failures = 0;
    for (int i = 0; i < 10; ++i) {
        Outcome out = criteria[i].fn();
        std::printf("[%2d] %s  %s: %s\n", i + 1, out.pass ? "PASS" : "FAIL",
                    criteria[i].name, out.detail.c_str());
        for (const std::string& ev : out.evidence) {
            std::printf("     %s\n", ev.c_str());
        }
        if (out.pass) {
            passed.insert(i + 1);
        } else {
            ++failures;
        }
    }
    std::printf("acceptance: %d of 10 criteria pass\n", 10 - failures);

    if (expect) {
        if (passed == *expect) {
            std::printf("acceptance outcome matches the documented expectation\n");
            return 0;
        }
        std::printf("acceptance outcome DIFFERS from the documented expectation\n");
        return 1;
    }
    return failures;
}
