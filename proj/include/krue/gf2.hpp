#pragma once

// Arithmetic in GF(2^nu). Elements are nu-bit strings read as polynomials
// over GF(2); reduction is modulo a pinned irreducible polynomial of
// degree nu. A built-in table covers nu in {4, 8, 16, 32, 64, 128, 256};
// any other width gets the numerically smallest irreducible polynomial of
// that degree, derived deterministically. Custom polynomials are accepted
// and verified (trial division up to nu = 32, Rabin's test above).

#include <cstdint>
#include <memory>

#include "krue/bits.hpp"

namespace krue {

class FieldSpec {
public:
    // Verifies degree and irreducibility.
    FieldSpec(unsigned nu, const Bitstring& reduction_poly);

    // Table entry or derived smallest irreducible polynomial.
    static FieldSpec standard(unsigned nu);
    static Bitstring standard_poly(unsigned nu);

    unsigned nu() const { return d_->nu; }
    const Bitstring& reduction_poly() const { return d_->poly; }

    bool operator==(const FieldSpec& other) const;
    bool operator!=(const FieldSpec& other) const { return !(*this == other); }

private:
    struct Data {
        unsigned nu;
        Bitstring poly;
    };
    std::shared_ptr<const Data> d_;
};

class FieldElement {
public:
    FieldElement(const FieldSpec& spec, const Bitstring& bits);

    static FieldElement zero(const FieldSpec& spec);
    static FieldElement one(const FieldSpec& spec);
    static FieldElement from_uint(const FieldSpec& spec, uint64_t value);

    const FieldSpec& spec() const { return spec_; }
    const Bitstring& bits() const { return bits_; }
    bool is_zero() const { return bits_.is_zero(); }

    bool operator==(const FieldElement& other) const;
    bool operator!=(const FieldElement& other) const { return !(*this == other); }

private:
    FieldSpec spec_;
    Bitstring bits_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

// True iff the polynomial (top bit = degree nu) is irreducible over GF(2).
// Uses trial division for nu <= 32 and Rabin's test for larger nu.
bool poly_is_irreducible(const Bitstring& poly);

} // namespace krue
