#include "krue/channel.hpp"

#include <bit>

#include "krue/errors.hpp"

namespace krue {

unsigned basis_count(Encoding enc) {
    return enc == Encoding::FourState ? 2 : 3;
}

BasisSeq::BasisSeq(Encoding enc, std::vector<uint8_t> bases)
    : enc_(enc), bases_(std::move(bases)) {
    unsigned bc = basis_count(enc_);
    for (uint8_t b : bases_) {
        if (b >= bc) throw ParamError("basis index out of range for the encoding");
    }
}

ChannelModel ChannelModel::ideal() { return ChannelModel(Kind::Ideal, 0.0); }

ChannelModel ChannelModel::bsc(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 0.5)) {
        throw ParamError("bsc flip rate must lie in [0, 1/2]");
    }
    return ChannelModel(Kind::Bsc, gamma);
}

ChannelModel ChannelModel::intercept_resend() {
    return ChannelModel(Kind::InterceptResend, 0.0);
}

RandomStream::RandomStream(uint64_t seed) : engine_(seed) {}

uint64_t RandomStream::word() { return engine_(); }

bool RandomStream::bit() { return (word() >> 63) & 1; }

uint64_t RandomStream::below(uint64_t bound) {
    if (bound == 0) throw ParamError("empty range");
    if (bound == 1) return 0;
    uint64_t mask = ~uint64_t(0) >> std::countl_zero(bound - 1);
    for (;;) {
        uint64_t r = word() & mask;
        if (r < bound) return r;
    }
}

bool RandomStream::bernoulli(double p) {
    return double(word() >> 11) * 0x1.0p-53 < p;
}

Bitstring RandomStream::bits(size_t len) {
    Bitstring out(len);
    uint64_t w = 0;
    for (size_t i = 0; i < len; ++i) {
        if (i % 64 == 0) w = word();
        out.set(i, (w >> 63) & 1);
        w <<= 1;
    }
    return out;
}

uint64_t derive_seed(uint64_t seed, uint64_t stream_index) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Bitstring transmit(const Bitstring& x, const BasisSeq& b, const ChannelModel& model,
                   RandomStream& rng) {
    if (x.size() != b.size()) throw LengthMismatch("payload and basis sequence differ");
    switch (model.kind()) {
        case ChannelModel::Kind::Ideal:
            return x;
        case ChannelModel::Kind::Bsc: {
            Bitstring out = x;
            for (size_t i = 0; i < out.size(); ++i) {
                if (rng.bernoulli(model.gamma())) out.set(i, !out[i]);
            }
            return out;
        }
        case ChannelModel::Kind::InterceptResend: {
            // Eve measures in her own basis and resends her outcome. On a
            // basis match the state passes intact; on a mismatch Bob's
            // measurement is uniform.
            Bitstring out = x;
            unsigned bc = basis_count(b.encoding());
            for (size_t i = 0; i < out.size(); ++i) {
                uint64_t eve = rng.below(bc);
                if (eve != b[i]) out.set(i, rng.bit());
            }
            return out;
        }
    }
    throw ParamError("unhandled channel model"); // unreachable
}

double induced_error_rate(const ChannelModel& model, Encoding enc) {
    switch (model.kind()) {
        case ChannelModel::Kind::Ideal:
            return 0.0;
        case ChannelModel::Kind::Bsc:
            return model.gamma();
        case ChannelModel::Kind::InterceptResend: {
            double bc = basis_count(enc);
            return (bc - 1.0) / (2.0 * bc);
        }
    }
    throw ParamError("unhandled channel model"); // unreachable
}

} // namespace krue
