#include "krue/gf2.hpp"

#include <bit>
#include <cstddef>
#include <utility>
#include <vector>

#include "krue/errors.hpp"

namespace krue {
namespace {

// Dense word representation of a GF(2) polynomial: bit i of word i/64 is
// the coefficient of x^i. Unlike Bitstring this is little-endian in the
// exponent, which keeps shift/xor loops branch-free.
using Words = std::vector<uint64_t>;

size_t words_for(size_t bits) { return bits == 0 ? 1 : (bits + 63) / 64; }

Words to_words(const Bitstring& b) {
    Words w(words_for(b.size()), 0);
    for (size_t j = 0; j < b.size(); ++j) {
        if (b[j]) {
            size_t i = b.size() - 1 - j;
            w[i / 64] |= uint64_t(1) << (i % 64);
        }
    }
    return w;
}

Bitstring from_words(const Words& w, size_t len) {
    Bitstring out(len);
    for (size_t i = 0; i < len; ++i) {
        if (i / 64 < w.size() && ((w[i / 64] >> (i % 64)) & 1)) {
            out.set(len - 1 - i, true);
        }
    }
    return out;
}

int wdeg(const Words& w) {
    for (size_t i = w.size(); i-- > 0;) {
        if (w[i]) return int(i * 64 + 63 - std::countl_zero(w[i]));
    }
    return -1;
}

bool wbit(const Words& w, size_t i) {
    return i / 64 < w.size() && ((w[i / 64] >> (i % 64)) & 1);
}

// acc ^= src << shift, growing acc as needed.
void wxor_shl(Words& acc, const Words& src, unsigned shift) {
    int d = wdeg(src);
    if (d < 0) return;
    size_t need = words_for(size_t(d) + shift + 1);
    if (acc.size() < need) acc.resize(need, 0);
    unsigned ws = shift / 64, bs = shift % 64;
    for (size_t i = src.size(); i-- > 0;) {
        if (!src[i]) continue;
        acc[i + ws] ^= src[i] << bs;
        if (bs) {
            uint64_t hi = src[i] >> (64 - bs);
            if (hi) acc[i + ws + 1] ^= hi;
        }
    }
}

void wmod(Words& a, const Words& f) {
    int df = wdeg(f);
    for (int da = wdeg(a); da >= df; da = wdeg(a)) {
        wxor_shl(a, f, unsigned(da - df));
    }
}

bool weq(const Words& a, const Words& b) {
    Words t = a;
    wxor_shl(t, b, 0);
    return wdeg(t) < 0;
}

// Squaring over GF(2) spreads each coefficient of x^i to x^(2i).
uint64_t spread32(uint32_t x) {
    uint64_t v = x;
    v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
    v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
    v = (v | (v << 2)) & 0x3333333333333333ull;
    v = (v | (v << 1)) & 0x5555555555555555ull;
    return v;
}

Words wsq(const Words& a) {
    Words out(a.size() * 2, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        out[2 * i] = spread32(uint32_t(a[i]));
        out[2 * i + 1] = spread32(uint32_t(a[i] >> 32));
    }
    return out;
}

Words wgcd(Words a, Words b) {
    while (wdeg(b) >= 0) {
        wmod(a, b);
        std::swap(a, b);
    }
    return a;
}

uint64_t mod_u64(uint64_t a, uint64_t g, int da, int dg) {
    for (int i = da; i >= dg; --i) {
        if ((a >> i) & 1) a ^= g << (i - dg);
    }
    return a;
}

// Exhaustive trial division by every polynomial of degree 1..deg/2.
bool irreducible_trial(uint64_t f, int deg) {
    for (int d = 1; 2 * d <= deg; ++d) {
        for (uint64_t g = uint64_t(1) << d; g < uint64_t(1) << (d + 1); ++g) {
            if (mod_u64(f, g, deg, d) == 0) return false;
        }
    }
    return true;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> ps;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// x^(2^k) mod f, by repeated squaring of x.
Words pow_x_2k(unsigned k, const Words& f) {
    Words h(f.size(), 0);
    h[0] = 2;
    wmod(h, f);
    for (unsigned i = 0; i < k; ++i) {
        h = wsq(h);
        wmod(h, f);
        h.resize(f.size()); // reduced degree fits; keep the buffer from doubling
    }
    return h;
}

// Rabin's criterion: f of degree n is irreducible iff x^(2^n) = x mod f
// and gcd(x^(2^(n/q)) - x, f) = 1 for every prime q dividing n.
bool irreducible_rabin(const Words& f) {
    int n = wdeg(f);
    Words x(f.size(), 0);
    x[0] = 2;
    wmod(x, f);
    Words top = pow_x_2k(unsigned(n), f);
    if (!weq(top, x)) return false;
    for (unsigned q : prime_factors(unsigned(n))) {
        Words h = pow_x_2k(unsigned(n) / q, f);
        wxor_shl(h, x, 0);
        if (wdeg(wgcd(f, h)) != 0) return false;
    }
    return true;
}

// Low-order terms of the numerically smallest irreducible x^nu + c.
uint64_t smallest_irreducible_low(unsigned nu) {
    if (nu == 1) return 1; // x + 1
    for (uint64_t c = 1;; c += 2) {
        if (nu < 64 && c >= uint64_t(1) << nu) {
            throw ParamError("no irreducible polynomial found"); // unreachable
        }
        // Even total weight means divisibility by x + 1.
        if (std::popcount(c) % 2 != 0) continue;
        if (nu <= 32) {
            uint64_t f = (uint64_t(1) << nu) | c;
            if (irreducible_trial(f, int(nu))) return c;
        } else {
            Words f(words_for(nu + 1), 0);
            f[nu / 64] |= uint64_t(1) << (nu % 64);
            f[0] ^= c;
            if (irreducible_rabin(f)) return c;
        }
    }
}

void require_same(const FieldElement& a, const FieldElement& b) {
    if (a.spec() != b.spec()) {
        throw FieldMismatch("operands belong to different fields");
    }
}

} // namespace

bool poly_is_irreducible(const Bitstring& poly) {
    Words w = to_words(poly);
    int deg = wdeg(w);
    if (deg <= 0) return false;
    if (deg == 1) return true;
    if (deg <= 32) {
        uint64_t f = 0;
        for (size_t i = 0; i <= size_t(deg); ++i) {
            if (wbit(w, i)) f |= uint64_t(1) << i;
        }
        return irreducible_trial(f, deg);
    }
    return irreducible_rabin(w);
}

FieldSpec::FieldSpec(unsigned nu, const Bitstring& reduction_poly) {
    if (nu == 0) throw ParamError("field width must be positive");
    if (reduction_poly.size() != size_t(nu) + 1) {
        throw ParamError("reduction polynomial must have nu+1 coefficients");
    }
    if (!reduction_poly[0]) {
        throw ParamError("reduction polynomial must have degree exactly nu");
    }
    if (!poly_is_irreducible(reduction_poly)) {
        throw ParamError("reduction polynomial is not irreducible");
    }
    d_ = std::make_shared<const Data>(Data{nu, reduction_poly});
}

Bitstring FieldSpec::standard_poly(unsigned nu) {
    if (nu == 0) throw ParamError("field width must be positive");
    uint64_t low;
    switch (nu) {
        case 4: low = 0x3; break;                 // x^4 + x + 1
        case 8: low = 0x1B; break;                // x^8 + x^4 + x^3 + x + 1
        case 16: low = 0x2B; break;               // x^16 + x^5 + x^3 + x + 1
        case 32: low = 0x8D; break;               // x^32 + x^7 + x^3 + x^2 + 1
        case 64: low = 0x1B; break;               // x^64 + x^4 + x^3 + x + 1
        case 128: low = 0x87; break;              // x^128 + x^7 + x^2 + x + 1
        case 256: low = 0x425; break;             // x^256 + x^10 + x^5 + x^2 + 1
        default: low = smallest_irreducible_low(nu); break;
    }
    Bitstring p(size_t(nu) + 1);
    p.set(0, true);
    for (unsigned i = 0; i < 64 && i < nu; ++i) {
        if ((low >> i) & 1) p.set(nu - i, true);
    }
    return p;
}

FieldSpec FieldSpec::standard(unsigned nu) {
    return FieldSpec(nu, standard_poly(nu));
}

bool FieldSpec::operator==(const FieldSpec& other) const {
    return d_->nu == other.d_->nu && d_->poly == other.d_->poly;
}

FieldElement::FieldElement(const FieldSpec& spec, const Bitstring& bits)
    : spec_(spec), bits_(bits) {
    if (bits_.size() != spec_.nu()) {
        throw LengthMismatch("element width does not match the field");
    }
}

FieldElement FieldElement::zero(const FieldSpec& spec) {
    return FieldElement(spec, Bitstring::zeros(spec.nu()));
}

FieldElement FieldElement::one(const FieldSpec& spec) {
    Bitstring b = Bitstring::zeros(spec.nu());
    b.set(spec.nu() - 1, true);
    return FieldElement(spec, b);
}

FieldElement FieldElement::from_uint(const FieldSpec& spec, uint64_t value) {
    Bitstring b = Bitstring::zeros(spec.nu());
    for (unsigned i = 0; i < 64; ++i) {
        if ((value >> i) & 1) {
            if (i >= spec.nu()) throw ParamError("value does not fit the field width");
            b.set(spec.nu() - 1 - i, true);
        }
    }
    return FieldElement(spec, b);
}

bool FieldElement::operator==(const FieldElement& other) const {
    return spec_ == other.spec_ && bits_ == other.bits_;
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return FieldElement(a.spec(), a.bits() ^ b.bits());
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    unsigned nu = a.spec().nu();
    Words pw = to_words(a.spec().reduction_poly());
    size_t nw = words_for(size_t(nu) + 1);
    Words acc(nw, 0);
    Words cur = to_words(a.bits());
    cur.resize(nw, 0);
    Words bw = to_words(b.bits());
    for (unsigned i = 0; i < nu; ++i) {
        if (wbit(bw, i)) {
            for (size_t w = 0; w < nw; ++w) acc[w] ^= cur[w];
        }
        uint64_t carry = 0;
        for (size_t w = 0; w < nw; ++w) {
            uint64_t next = cur[w] >> 63;
            cur[w] = (cur[w] << 1) | carry;
            carry = next;
        }
        if (wbit(cur, nu)) {
            for (size_t w = 0; w < nw; ++w) cur[w] ^= pw[w];
        }
    }
    return FieldElement(a.spec(), from_words(acc, nu));
}

FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw NonInvertible("zero has no multiplicative inverse");
    unsigned nu = a.spec().nu();
    Words pw = to_words(a.spec().reduction_poly());
    // Extended Euclid on (modulus, a), tracking s with s * a = r mod p.
    Words r0 = pw, r1 = to_words(a.bits());
    Words s0(1, 0), s1(1, 1);
    while (wdeg(r1) >= 0) {
        int d = wdeg(r0) - wdeg(r1);
        if (d < 0) {
            std::swap(r0, r1);
            std::swap(s0, s1);
            continue;
        }
        wxor_shl(r0, r1, unsigned(d));
        wxor_shl(s0, s1, unsigned(d));
    }
    if (wdeg(r0) != 0) {
        throw NonInvertible("element shares a factor with the modulus");
    }
    wmod(s0, pw);
    return FieldElement(a.spec(), from_words(s0, nu));
}

} // namespace krue
