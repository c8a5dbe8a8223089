#pragma once

// The encrypt/transmit/decrypt/feedback/key-update round and the
// multi-round session. One round: Alice draws fresh inner keys kappa and
// an authentication tag over mu || kappa, masks the result with z, lifts
// the ciphertext through the seeded hash inverse to a k-bit preimage,
// encodes it, and masks the redundancy with e. Bob decodes within the
// correction radius, unmasks, and checks the tag; his verdict returns
// over an authenticated one-time-padded feedback bit. Accepted rounds
// recycle every key (the next round's k_fb, k_otp, e ride inside kappa);
// rejected rounds replace z, k_fb, k_otp, e from the shared reservoir.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krue/bits.hpp"
#include "krue/channel.hpp"
#include "krue/ecc.hpp"
#include "krue/gf2.hpp"
#include "krue/mac.hpp"

namespace krue {

class ProtocolParams {
public:
    // Validates: ell <= k <= n, ell > (n-k) + 2*lambda + 1 (the plaintext
    // slot must be nonempty), the code dimensions match (n, k), and the
    // code radius covers floor(n*beta). The hash field is GF(2^k).
    static ProtocolParams make(unsigned n, unsigned k, unsigned ell, unsigned lambda,
                               double beta, Encoding encoding, CodeSpec code,
                               unsigned rounds);

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    unsigned ell() const { return ell_; }
    unsigned lambda() const { return lambda_; }
    double beta() const { return beta_; }
    Encoding encoding() const { return encoding_; }
    const CodeSpec& code() const { return code_; }
    unsigned rounds() const { return rounds_; }

    // Plaintext bits per round: ell - (n-k) - 2*lambda - 1.
    size_t mu_len() const { return ell_ - (n_ - k_) - 2 * lambda_ - 1; }
    // Inner key bits per round: lambda + 1 + (n-k).
    size_t kappa_len() const { return lambda_ + 1 + (n_ - k_); }

    const FieldSpec& field() const { return field_; }
    const MacSpec& payload_mac() const { return payload_mac_; }

private:
    ProtocolParams(unsigned n, unsigned k, unsigned ell, unsigned lambda, double beta,
                   Encoding encoding, CodeSpec code, unsigned rounds);

    unsigned n_, k_, ell_, lambda_;
    double beta_;
    Encoding encoding_;
    CodeSpec code_;
    unsigned rounds_;
    FieldSpec field_;
    MacSpec payload_mac_;
};

// Deterministic shared pool of fresh key bits. Both parties construct it
// from the same seed and interleave identical draw sequences, so the
// streams stay synchronized. Draws count against an optional capacity.
class KeyReservoir {
public:
    static constexpr uint64_t kUnlimited = ~uint64_t(0);

    explicit KeyReservoir(uint64_t seed, uint64_t capacity_bits = kUnlimited);

    // nbits fresh bits; each call starts a fresh word boundary, so a
    // draw sequence is reproducible from its lengths alone. Throws
    // ReservoirExhausted when the capacity would be exceeded.
    Bitstring draw(size_t nbits);

    uint64_t consumed() const { return consumed_; }
    uint64_t capacity() const { return capacity_; }

private:
    RandomStream stream_;
    uint64_t consumed_ = 0;
    uint64_t capacity_;
};

// The seven shared secrets of one round.
struct KeyBundle {
    Bitstring z;     // ell-bit ciphertext mask
    Bitstring k_mac; // lambda-bit payload MAC key
    BasisSeq b;      // n basis choices
    Bitstring k_fb;  // lambda-bit feedback MAC key
    bool k_otp;      // feedback one-time pad
    FieldElement u;  // nonzero hash seed in GF(2^k)
    Bitstring e;     // (n-k)-bit redundancy mask

    // Draws a full bundle from the reservoir in the order z, k_mac, b,
    // k_fb, k_otp, u (redrawn while zero), e. Basis entries for the
    // 3-basis encoding come from 2-bit rejection sampling.
    static KeyBundle draw_initial(const ProtocolParams& params, KeyReservoir& reservoir);

    bool operator==(const KeyBundle& other) const;
    bool operator!=(const KeyBundle& other) const { return !(*this == other); }
};

// What Alice assembled for one round; kappa is retained for the key
// update on accept.
struct AugmentedMessage {
    Bitstring mu;
    Bitstring kappa;
    Bitstring tau;

    // mu || kappa || tau, exactly ell bits.
    Bitstring serialize() const { return mu.concat(kappa).concat(tau); }
};

struct EncryptResult {
    Bitstring x; // n-bit payload for the channel
    AugmentedMessage pending;
    // Ephemeral intermediates, exposed for tests; never persist these.
    Bitstring c, r, p;
};

struct DecryptResult {
    bool omega = false;
    Bitstring mu_hat;
    Bitstring kappa_hat;
    int corrected = -1; // bits corrected by the decoder, -1 on failure
};

struct FeedbackMsg {
    bool masked; // omega xor k_otp
    Bitstring tau_fb;
};

struct FeedbackRead {
    bool omega = false;  // reject when the tag fails
    bool tampered = false;
};

EncryptResult alice_encrypt(const ProtocolParams& params, const KeyBundle& keys,
                            const Bitstring& mu, RandomStream& rng);

DecryptResult bob_decrypt(const ProtocolParams& params, const KeyBundle& keys,
                          const Bitstring& x_prime);

FeedbackMsg feedback(const ProtocolParams& params, const KeyBundle& keys, bool omega);

FeedbackRead read_feedback(const ProtocolParams& params, const KeyBundle& keys,
                           const FeedbackMsg& msg);

// Accept: keep b, u, k_mac, z and install (k_fb, k_otp, e) = kappa split
// as lambda | 1 | n-k. Reject: keep b, u, k_mac and draw fresh z, k_fb,
// k_otp, e from the reservoir in that order (ell + lambda + 1 + n-k
// bits exactly).
KeyBundle key_update(const ProtocolParams& params, const KeyBundle& keys, bool omega,
                     const Bitstring& kappa, KeyReservoir& reservoir);

struct RoundRecord {
    unsigned round = 0; // 1-based
    bool omega = false;
    bool recovered = false;
    int errors_corrected = -1;
    uint64_t reservoir_bits_used = 0;
};

struct SessionReport {
    std::vector<RoundRecord> rounds;
    double accept_rate = 0.0;
    unsigned recovered_count = 0;
    uint64_t initial_draw_bits = 0;  // one-time bundle setup
    uint64_t round_draw_bits = 0;    // rejects only

    // Header round,omega,recovered,errors_corrected,reservoir_bits_used.
    std::string to_csv() const;
};

// Keys an eavesdropper learns once the session's final verdict is out.
struct RoundKeys {
    Bitstring k_fb;
    bool k_otp;
    Bitstring e;
};

struct Reveal {
    BasisSeq b;
    FieldElement u;
    Bitstring k_mac;
    std::vector<RoundKeys> per_round;
    std::optional<Bitstring> final_z; // present iff the last round accepted
};

class Session {
public:
    Session(ProtocolParams params, ChannelModel channel, uint64_t seed,
            uint64_t reservoir_capacity = KeyReservoir::kUnlimited);

    RoundRecord run_round(const Bitstring& mu);
    SessionReport run(const std::vector<Bitstring>& messages);

    const ProtocolParams& params() const { return params_; }
    const KeyBundle& alice_keys() const { return alice_; }
    const KeyBundle& bob_keys() const { return bob_; }
    uint64_t initial_draw_bits() const { return initial_draw_bits_; }

    Reveal reveal() const;

    // Durable state only: round counter, both bundles, reservoir
    // consumption. Round intermediates (c, r, p, x, x') never appear.
    std::string save_state() const;

private:
    ProtocolParams params_;
    ChannelModel channel_;
    KeyReservoir alice_res_, bob_res_;
    RandomStream alice_rng_, channel_rng_;
    KeyBundle alice_, bob_;
    uint64_t initial_draw_bits_ = 0;
    unsigned rounds_run_ = 0;
    std::vector<RoundKeys> history_;
    std::optional<Bitstring> last_z_;
    bool last_omega_ = false;
};

SessionReport run_session(const ProtocolParams& params, const ChannelModel& channel,
                          const std::vector<Bitstring>& messages, uint64_t seed);

} // namespace krue
