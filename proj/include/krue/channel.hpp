#pragma once

// Classical statistics of the qubit link. Honest parties share the basis
// sequence and measure in matching bases, so the noiseless channel is an
// identity on bits and noise models act as bit flips: a binary symmetric
// channel with rate gamma, or an intercept-resend adversary who measures
// each qubit in a random basis and forwards the outcome (flip rate 1/4
// with 2 bases, 1/3 with 3).

#include <cstdint>
#include <random>
#include <vector>

#include "krue/bits.hpp"

namespace krue {

enum class Encoding { FourState, SixState };

// Number of conjugate bases the encoding uses: 2 or 3.
unsigned basis_count(Encoding enc);

// Per-position basis choices, entries in [0, basis_count).
class BasisSeq {
public:
    BasisSeq(Encoding enc, std::vector<uint8_t> bases);

    Encoding encoding() const { return enc_; }
    size_t size() const { return bases_.size(); }
    uint8_t operator[](size_t i) const { return bases_[i]; }
    const std::vector<uint8_t>& bases() const { return bases_; }

    bool operator==(const BasisSeq& other) const {
        return enc_ == other.enc_ && bases_ == other.bases_;
    }

private:
    Encoding enc_;
    std::vector<uint8_t> bases_;
};

class ChannelModel {
public:
    enum class Kind { Ideal, Bsc, InterceptResend };

    static ChannelModel ideal();
    static ChannelModel bsc(double gamma); // 0 <= gamma <= 1/2
    static ChannelModel intercept_resend();

    Kind kind() const { return kind_; }
    double gamma() const { return gamma_; }

private:
    ChannelModel(Kind kind, double gamma) : kind_(kind), gamma_(gamma) {}
    Kind kind_;
    double gamma_;
};

// Deterministic random stream: a standard-specified engine plus
// hand-rolled draws, so identical seeds give identical bits on every
// platform and standard-library version (std distributions are not
// portable; the engine itself is).
class RandomStream {
public:
    explicit RandomStream(uint64_t seed);

    uint64_t word();

    // Uniform bit / integer in [0, bound) via masked rejection.
    bool bit();
    uint64_t below(uint64_t bound);

    // True with probability p, from the top 53 bits of one word.
    bool bernoulli(double p);

    // len independent uniform bits, taken from successive words most
    // significant bit first.
    Bitstring bits(size_t len);

private:
    std::mt19937_64 engine_;
};

// Independent stream seed for a named substream of a master seed.
uint64_t derive_seed(uint64_t seed, uint64_t stream_index);

// One use of the channel on an n-bit payload; consumes randomness only
// for the noisy models.
Bitstring transmit(const Bitstring& x, const BasisSeq& b, const ChannelModel& model,
                   RandomStream& rng);

// Closed-form per-bit flip probability of a model under an encoding.
double induced_error_rate(const ChannelModel& model, Encoding enc);

} // namespace krue
