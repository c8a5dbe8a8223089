#include "krue/mac.hpp"

#include "krue/errors.hpp"

namespace krue {
namespace {

Bitstring length_block(size_t len, unsigned lambda) {
    if (lambda <= 64) return Bitstring::from_uint(uint64_t(len), lambda);
    return Bitstring::zeros(lambda - 64).concat(Bitstring::from_uint(uint64_t(len), 64));
}

// Block i (1-based) of msg; a partial final block is right-aligned.
Bitstring block_at(const Bitstring& msg, size_t i, unsigned lambda) {
    size_t start = (i - 1) * lambda;
    size_t rem = msg.size() - start;
    if (rem >= lambda) return msg.slice(start, lambda);
    return Bitstring::zeros(lambda - rem).concat(msg.slice(start, rem));
}

} // namespace

MacSpec::MacSpec(unsigned lambda, size_t msg_len)
    : MacSpec(lambda, msg_len, FieldSpec::standard(lambda)) {}

MacSpec::MacSpec(unsigned lambda, size_t msg_len, const FieldSpec& field)
    : lambda_(lambda), msg_len_(msg_len), field_(field) {
    if (lambda_ < 8) throw ParamError("tag width must be at least 8 bits");
    if (msg_len_ == 0) throw ParamError("message length must be positive");
    if (lambda_ < 64 && msg_len_ >= (uint64_t(1) << lambda_)) {
        throw ParamError("message length must fit the length block");
    }
    if (field_.nu() != lambda_) {
        throw FieldMismatch("MAC field width must equal lambda");
    }
}

Bitstring tag(const MacSpec& spec, const Bitstring& key, const Bitstring& msg) {
    if (key.size() != spec.lambda()) throw LengthMismatch("key must have lambda bits");
    if (msg.size() != spec.msg_len()) throw LengthMismatch("message length does not match spec");
    const FieldSpec& F = spec.field();
    FieldElement u(F, key);
    size_t d = (msg.size() + spec.lambda() - 1) / spec.lambda();
    FieldElement acc = FieldElement::zero(F);
    acc = mul(add(acc, FieldElement(F, length_block(msg.size(), spec.lambda()))), u);
    for (size_t i = d; i >= 1; --i) {
        acc = mul(add(acc, FieldElement(F, block_at(msg, i, spec.lambda()))), u);
    }
    return acc.bits();
}

bool verify(const MacSpec& spec, const Bitstring& key, const Bitstring& msg,
            const Bitstring& claimed_tag) {
    if (claimed_tag.size() != spec.lambda()) {
        throw LengthMismatch("tag must have lambda bits");
    }
    return tag(spec, key, msg) == claimed_tag;
}

Bitstring tag_feedback(const MacSpec& spec, const Bitstring& key, bool masked_bit) {
    MacSpec one_bit(spec.lambda(), 1, spec.field());
    Bitstring msg(1);
    msg.set(0, masked_bit);
    return tag(one_bit, key, msg);
}

} // namespace krue
