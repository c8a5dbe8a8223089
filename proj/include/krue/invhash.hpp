#pragma once

// Seeded linear hash family over GF(2^nu) with an explicit inverse. The
// seed u selects the map x -> u*x; compression keeps the ell most
// significant bits. Because the full map is a field multiplication, any
// compressed output c can be extended by nu-ell free bits r and pulled
// back through u^{-1}, which is what lets a ciphertext prefix be lifted
// to a uniformly chosen preimage.

#include "krue/bits.hpp"
#include "krue/gf2.hpp"

namespace krue {

// Parameter bundle for the compressed family: field width nu and output
// width ell with 1 <= ell <= nu.
class HashSpec {
public:
    HashSpec(const FieldSpec& field, unsigned ell);

    const FieldSpec& field() const { return field_; }
    unsigned nu() const { return field_.nu(); }
    unsigned ell() const { return ell_; }

private:
    FieldSpec field_;
    unsigned ell_;
};

// u * x over the field; x is a nu-bit string. Throws DegenerateSeed on
// u = 0 (the zero seed collapses the family and has no inverse).
Bitstring forward(const FieldElement& u, const Bitstring& x);

// The ell most significant bits of u * x, 1 <= ell <= nu.
Bitstring pa(const FieldElement& u, const Bitstring& x, unsigned ell);

// Preimage of c under the compressed map: (c || r) * u^{-1}, where r
// fills in the nu-ell free low bits. pa(u, invert(u, c, r), |c|) == c
// for every r.
Bitstring invert(const FieldElement& u, const Bitstring& c, const Bitstring& r);

} // namespace krue
