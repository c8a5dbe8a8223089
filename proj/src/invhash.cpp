#include "krue/invhash.hpp"

#include "krue/errors.hpp"

namespace krue {
namespace {

void require_seed(const FieldElement& u) {
    if (u.is_zero()) throw DegenerateSeed("hash seed u must be nonzero");
}

} // namespace

HashSpec::HashSpec(const FieldSpec& field, unsigned ell)
    : field_(field), ell_(ell) {
    if (ell_ < 1 || ell_ > field_.nu()) {
        throw ParamError("hash output width must satisfy 1 <= ell <= nu");
    }
}

Bitstring forward(const FieldElement& u, const Bitstring& x) {
    require_seed(u);
    return mul(u, FieldElement(u.spec(), x)).bits();
}

Bitstring pa(const FieldElement& u, const Bitstring& x, unsigned ell) {
    if (ell < 1 || ell > u.spec().nu()) {
        throw ParamError("hash output width must satisfy 1 <= ell <= nu");
    }
    return forward(u, x).prefix(ell);
}

Bitstring invert(const FieldElement& u, const Bitstring& c, const Bitstring& r) {
    require_seed(u);
    if (c.size() < 1 || c.size() + r.size() != u.spec().nu()) {
        throw LengthMismatch("compressed value and padding must fill nu bits");
    }
    return mul(inv(u), FieldElement(u.spec(), c.concat(r))).bits();
}

} // namespace krue
