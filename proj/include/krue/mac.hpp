#pragma once

// Polynomial-evaluation MAC over GF(2^lambda). The message is split into
// lambda-bit blocks m_1..m_d (a partial final block is right-aligned, so
// short messages occupy the low bits), a length block carrying the bit
// count is appended, and the tag is sum m_i * key^i plus len * key^(d+1),
// evaluated by Horner. A single lambda-bit key authenticates one message
// with substitution probability at most (d+1) / 2^lambda.

#include "krue/bits.hpp"
#include "krue/gf2.hpp"

namespace krue {

class MacSpec {
public:
    // Tag/key width lambda (>= 8) and message length in bits (> 0,
    // < 2^lambda so the length block is exact). The field defaults to
    // the standard GF(2^lambda).
    MacSpec(unsigned lambda, size_t msg_len);
    MacSpec(unsigned lambda, size_t msg_len, const FieldSpec& field);

    unsigned lambda() const { return lambda_; }
    size_t msg_len() const { return msg_len_; }
    const FieldSpec& field() const { return field_; }

private:
    unsigned lambda_;
    size_t msg_len_;
    FieldSpec field_;
};

Bitstring tag(const MacSpec& spec, const Bitstring& key, const Bitstring& msg);

// Accept iff tag(spec, key, msg) equals claimed_tag.
bool verify(const MacSpec& spec, const Bitstring& key, const Bitstring& msg,
            const Bitstring& claimed_tag);

// Tag over a 1-bit message (the masked feedback verdict), embedded in
// the low bit of a single zero-padded block. Uses spec only for its
// width and field; the length block pins the 1-bit message size, so
// feedback tags and payload tags never collide by construction.
Bitstring tag_feedback(const MacSpec& spec, const Bitstring& key, bool masked_bit);

} // namespace krue
