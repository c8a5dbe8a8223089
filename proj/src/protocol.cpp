#include "krue/protocol.hpp"

#include <cstdio>

#include "krue/analysis.hpp"
#include "krue/errors.hpp"
#include "krue/invhash.hpp"

namespace krue {

ProtocolParams::ProtocolParams(unsigned n, unsigned k, unsigned ell, unsigned lambda,
                               double beta, Encoding encoding, CodeSpec code,
                               unsigned rounds)
    : n_(n), k_(k), ell_(ell), lambda_(lambda), beta_(beta), encoding_(encoding),
      code_(std::move(code)), rounds_(rounds), field_(FieldSpec::standard(k)),
      payload_mac_(lambda, size_t(ell) - lambda) {}

ProtocolParams ProtocolParams::make(unsigned n, unsigned k, unsigned ell,
                                    unsigned lambda, double beta, Encoding encoding,
                                    CodeSpec code, unsigned rounds) {
    if (n < 1 || k < 1 || ell < 1 || rounds < 1) {
        throw ParamError("n, k, ell, rounds must be positive");
    }
    if (!(ell <= k && k <= n)) throw ParamError("need ell <= k <= n");
    if (ell <= (n - k) + 2 * lambda + 1) {
        throw ParamError("need ell > (n-k) + 2*lambda + 1 so the plaintext slot is nonempty");
    }
    if (!(beta >= 0.0 && beta <= 1.0)) throw ParamError("beta must lie in [0, 1]");
    if (code.n() != n || code.k() != k) {
        throw ParamError("code dimensions must match (n, k)");
    }
    if (code.t() < floor_nbeta(n, beta)) {
        throw ParamError("code radius t must cover floor(n*beta)");
    }
    return ProtocolParams(n, k, ell, lambda, beta, encoding, std::move(code), rounds);
}

KeyReservoir::KeyReservoir(uint64_t seed, uint64_t capacity_bits)
    : stream_(seed), capacity_(capacity_bits) {}

Bitstring KeyReservoir::draw(size_t nbits) {
    if (capacity_ != kUnlimited && consumed_ + nbits > capacity_) {
        throw ReservoirExhausted("key reservoir exhausted");
    }
    consumed_ += nbits;
    return stream_.bits(nbits);
}

namespace {

BasisSeq draw_basis(Encoding enc, unsigned n, KeyReservoir& res) {
    std::vector<uint8_t> bs(n);
    if (enc == Encoding::FourState) {
        Bitstring raw = res.draw(n);
        for (unsigned i = 0; i < n; ++i) bs[i] = raw[i] ? 1 : 0;
    } else {
        for (unsigned i = 0; i < n; ++i) {
            for (;;) {
                uint64_t v = res.draw(2).to_uint();
                if (v < 3) {
                    bs[i] = uint8_t(v);
                    break;
                }
            }
        }
    }
    return BasisSeq(enc, std::move(bs));
}

void check_bundle(const ProtocolParams& p, const KeyBundle& keys) {
    if (keys.z.size() != p.ell() || keys.k_mac.size() != p.lambda() ||
        keys.b.size() != p.n() || keys.b.encoding() != p.encoding() ||
        keys.k_fb.size() != p.lambda() || keys.e.size() != p.n() - p.k()) {
        throw LengthMismatch("key bundle does not fit the parameters");
    }
    if (keys.u.spec() != p.field() || keys.u.is_zero()) {
        throw ParamError("hash seed must be a nonzero element of GF(2^k)");
    }
}

} // namespace

KeyBundle KeyBundle::draw_initial(const ProtocolParams& params, KeyReservoir& reservoir) {
    Bitstring z = reservoir.draw(params.ell());
    Bitstring k_mac = reservoir.draw(params.lambda());
    BasisSeq b = draw_basis(params.encoding(), params.n(), reservoir);
    Bitstring k_fb = reservoir.draw(params.lambda());
    bool k_otp = reservoir.draw(1)[0];
    Bitstring useed = reservoir.draw(params.k());
    while (useed.is_zero()) useed = reservoir.draw(params.k());
    Bitstring e = reservoir.draw(params.n() - params.k());
    return KeyBundle{std::move(z), std::move(k_mac), std::move(b), std::move(k_fb),
                     k_otp, FieldElement(params.field(), useed), std::move(e)};
}

bool KeyBundle::operator==(const KeyBundle& other) const {
    return z == other.z && k_mac == other.k_mac && b == other.b && k_fb == other.k_fb &&
           k_otp == other.k_otp && u == other.u && e == other.e;
}

EncryptResult alice_encrypt(const ProtocolParams& params, const KeyBundle& keys,
                            const Bitstring& mu, RandomStream& rng) {
    check_bundle(params, keys);
    if (mu.size() != params.mu_len()) throw LengthMismatch("plaintext length mismatch");
    Bitstring kappa = rng.bits(params.kappa_len());
    Bitstring tau = tag(params.payload_mac(), keys.k_mac, mu.concat(kappa));
    AugmentedMessage pending{mu, std::move(kappa), std::move(tau)};
    Bitstring c = keys.z ^ pending.serialize();
    Bitstring r = rng.bits(params.k() - params.ell());
    Bitstring p = invert(keys.u, c, r);
    Bitstring x = encode(params.code(), p);
    x ^= Bitstring::zeros(params.k()).concat(keys.e);
    return EncryptResult{std::move(x), std::move(pending), std::move(c), std::move(r),
                         std::move(p)};
}

DecryptResult bob_decrypt(const ProtocolParams& params, const KeyBundle& keys,
                          const Bitstring& x_prime) {
    check_bundle(params, keys);
    if (x_prime.size() != params.n()) throw LengthMismatch("payload length mismatch");
    Bitstring y = x_prime ^ Bitstring::zeros(params.k()).concat(keys.e);
    std::optional<DecodeResult> dec = decode(params.code(), y);
    if (!dec) return DecryptResult{};
    Bitstring c_hat = pa(keys.u, dec->message, params.ell());
    Bitstring m_hat = c_hat ^ keys.z;
    DecryptResult out;
    out.corrected = int(dec->corrected);
    out.mu_hat = m_hat.prefix(params.mu_len());
    out.kappa_hat = m_hat.slice(params.mu_len(), params.kappa_len());
    Bitstring tau_hat = m_hat.suffix(params.lambda());
    out.omega = verify(params.payload_mac(), keys.k_mac, out.mu_hat.concat(out.kappa_hat),
                       tau_hat);
    return out;
}

FeedbackMsg feedback(const ProtocolParams& params, const KeyBundle& keys, bool omega) {
    check_bundle(params, keys);
    bool masked = omega != keys.k_otp;
    return FeedbackMsg{masked, tag_feedback(params.payload_mac(), keys.k_fb, masked)};
}

FeedbackRead read_feedback(const ProtocolParams& params, const KeyBundle& keys,
                           const FeedbackMsg& msg) {
    check_bundle(params, keys);
    Bitstring expect = tag_feedback(params.payload_mac(), keys.k_fb, msg.masked);
    if (expect != msg.tau_fb) return FeedbackRead{false, true};
    return FeedbackRead{msg.masked != keys.k_otp, false};
}

KeyBundle key_update(const ProtocolParams& params, const KeyBundle& keys, bool omega,
                     const Bitstring& kappa, KeyReservoir& reservoir) {
    check_bundle(params, keys);
    if (omega) {
        if (kappa.size() != params.kappa_len()) {
            throw LengthMismatch("kappa length mismatch in key update");
        }
        Bitstring k_fb = kappa.prefix(params.lambda());
        bool k_otp = kappa[params.lambda()];
        Bitstring e = kappa.suffix(params.n() - params.k());
        return KeyBundle{keys.z,           keys.k_mac, keys.b, std::move(k_fb),
                         k_otp,            keys.u,     std::move(e)};
    }
    Bitstring z = reservoir.draw(params.ell());
    Bitstring k_fb = reservoir.draw(params.lambda());
    bool k_otp = reservoir.draw(1)[0];
    Bitstring e = reservoir.draw(params.n() - params.k());
    return KeyBundle{std::move(z), keys.k_mac, keys.b, std::move(k_fb),
                     k_otp,        keys.u,     std::move(e)};
}

std::string SessionReport::to_csv() const {
    std::string out = "round,omega,recovered,errors_corrected,reservoir_bits_used\n";
    char buf[96];
    for (const RoundRecord& r : rounds) {
        std::snprintf(buf, sizeof buf, "%u,%d,%d,%d,%llu\n", r.round, r.omega ? 1 : 0,
                      r.recovered ? 1 : 0, r.errors_corrected,
                      (unsigned long long)r.reservoir_bits_used);
        out += buf;
    }
    return out;
}

Session::Session(ProtocolParams params, ChannelModel channel, uint64_t seed,
                 uint64_t reservoir_capacity)
    : params_(std::move(params)), channel_(channel),
      alice_res_(derive_seed(seed, 0), reservoir_capacity),
      bob_res_(derive_seed(seed, 0), reservoir_capacity),
      alice_rng_(derive_seed(seed, 1)), channel_rng_(derive_seed(seed, 2)),
      alice_(KeyBundle::draw_initial(params_, alice_res_)),
      bob_(KeyBundle::draw_initial(params_, bob_res_)),
      initial_draw_bits_(alice_res_.consumed()) {}

RoundRecord Session::run_round(const Bitstring& mu) {
    if (rounds_run_ >= params_.rounds()) {
        throw ParamError("session round budget exceeded");
    }
    uint64_t before = alice_res_.consumed();
    history_.push_back(RoundKeys{alice_.k_fb, alice_.k_otp, alice_.e});
    last_z_ = alice_.z;

    EncryptResult enc = alice_encrypt(params_, alice_, mu, alice_rng_);
    Bitstring x_prime = transmit(enc.x, alice_.b, channel_, channel_rng_);
    DecryptResult dec = bob_decrypt(params_, bob_, x_prime);
    FeedbackMsg fb = feedback(params_, bob_, dec.omega);
    FeedbackRead read = read_feedback(params_, alice_, fb);

    alice_ = key_update(params_, alice_, read.omega, enc.pending.kappa, alice_res_);
    bob_ = key_update(params_, bob_, dec.omega, dec.kappa_hat, bob_res_);

    last_omega_ = dec.omega;
    ++rounds_run_;
    RoundRecord rec;
    rec.round = rounds_run_;
    rec.omega = dec.omega;
    rec.recovered = dec.omega && dec.mu_hat == mu;
    rec.errors_corrected = dec.corrected;
    rec.reservoir_bits_used = alice_res_.consumed() - before;
    return rec;
}

SessionReport Session::run(const std::vector<Bitstring>& messages) {
    if (messages.size() > params_.rounds()) {
        throw ParamError("more messages than session rounds");
    }
    SessionReport rep;
    rep.initial_draw_bits = initial_draw_bits_;
    unsigned accepts = 0;
    for (const Bitstring& mu : messages) {
        RoundRecord rec = run_round(mu);
        accepts += rec.omega ? 1 : 0;
        rep.recovered_count += rec.recovered ? 1 : 0;
        rep.round_draw_bits += rec.reservoir_bits_used;
        rep.rounds.push_back(std::move(rec));
    }
    rep.accept_rate = rep.rounds.empty() ? 0.0 : double(accepts) / double(rep.rounds.size());
    return rep;
}

Reveal Session::reveal() const {
    Reveal rev{alice_.b, alice_.u, alice_.k_mac, history_, std::nullopt};
    if (last_omega_ && last_z_) rev.final_z = *last_z_;
    return rev;
}

std::string Session::save_state() const {
    auto bundle_lines = [](const char* who, const KeyBundle& kb) {
        std::string s;
        s += std::string(who) + "_z " + kb.z.to_hex() + "\n";
        s += std::string(who) + "_k_mac " + kb.k_mac.to_hex() + "\n";
        std::string bs;
        for (size_t i = 0; i < kb.b.size(); ++i) bs += char('0' + kb.b[i]);
        s += std::string(who) + "_b " + bs + "\n";
        s += std::string(who) + "_k_fb " + kb.k_fb.to_hex() + "\n";
        s += std::string(who) + "_k_otp " + (kb.k_otp ? "1" : "0") + "\n";
        s += std::string(who) + "_u " + kb.u.bits().to_hex() + "\n";
        s += std::string(who) + "_e " + kb.e.to_hex() + "\n";
        return s;
    };
    std::string out = "rounds_run " + std::to_string(rounds_run_) + "\n";
    out += "reservoir_consumed " + std::to_string(alice_res_.consumed()) + "\n";
    out += bundle_lines("alice", alice_);
    out += bundle_lines("bob", bob_);
    return out;
}

SessionReport run_session(const ProtocolParams& params, const ChannelModel& channel,
                          const std::vector<Bitstring>& messages, uint64_t seed) {
    Session session(params, channel, seed);
    return session.run(messages);
}

} // namespace krue
