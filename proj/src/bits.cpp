#include "krue/bits.hpp"

#include "krue/errors.hpp"

namespace krue {

Bitstring Bitstring::from_uint(uint64_t value, size_t len) {
    if (len > 64)
        throw LengthMismatch("from_uint: length " + std::to_string(len) + " exceeds 64");
    if (len < 64 && (value >> len) != 0)
        throw DomainError("from_uint: value does not fit in " + std::to_string(len) + " bits");
    Bitstring out(len);
    for (size_t j = 0; j < len; ++j)
        out.bits_[j] = static_cast<uint8_t>((value >> (len - 1 - j)) & 1u);
    return out;
}

Bitstring Bitstring::from_string(std::string_view s) {
    Bitstring out(s.size());
    for (size_t j = 0; j < s.size(); ++j) {
        if (s[j] != '0' && s[j] != '1')
            throw DomainError("from_string: invalid character in bit string");
        out.bits_[j] = static_cast<uint8_t>(s[j] - '0');
    }
    return out;
}

static int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bitstring Bitstring::from_hex(std::string_view hex, size_t len) {
    if (hex.size() * 4 < len)
        throw LengthMismatch("from_hex: too few hex digits for " + std::to_string(len) + " bits");
    if (hex.size() != (len + 3) / 4)
        throw LengthMismatch("from_hex: digit count does not match bit length");
    Bitstring out(len);
    for (size_t d = 0; d < hex.size(); ++d) {
        int v = hex_digit(hex[d]);
        if (v < 0)
            throw DomainError("from_hex: invalid hex digit");
        for (int b = 0; b < 4; ++b) {
            size_t j = 4 * d + static_cast<size_t>(b);
            int bit = (v >> (3 - b)) & 1;
            if (j < len)
                out.bits_[j] = static_cast<uint8_t>(bit);
            else if (bit != 0)
                throw DomainError("from_hex: nonzero padding past declared length");
        }
    }
    return out;
}

int Bitstring::at(size_t j) const {
    if (j >= bits_.size())
        throw DomainError("bit index out of range");
    return bits_[j];
}

void Bitstring::set(size_t j, int v) {
    if (j >= bits_.size())
        throw DomainError("bit index out of range");
    bits_[j] = static_cast<uint8_t>(v & 1);
}

Bitstring Bitstring::operator^(const Bitstring& other) const {
    Bitstring out = *this;
    out ^= other;
    return out;
}

Bitstring& Bitstring::operator^=(const Bitstring& other) {
    if (size() != other.size())
        throw LengthMismatch("xor: length mismatch " + std::to_string(size()) + " vs " +
                             std::to_string(other.size()));
    for (size_t j = 0; j < bits_.size(); ++j)
        bits_[j] ^= other.bits_[j];
    return *this;
}

Bitstring Bitstring::concat(const Bitstring& other) const {
    Bitstring out(size() + other.size());
    for (size_t j = 0; j < size(); ++j) out.bits_[j] = bits_[j];
    for (size_t j = 0; j < other.size(); ++j) out.bits_[size() + j] = other.bits_[j];
    return out;
}

Bitstring Bitstring::slice(size_t pos, size_t len) const {
    if (pos + len > size())
        throw LengthMismatch("slice: range out of bounds");
    Bitstring out(len);
    for (size_t j = 0; j < len; ++j) out.bits_[j] = bits_[pos + j];
    return out;
}

size_t Bitstring::weight() const {
    size_t w = 0;
    for (uint8_t b : bits_) w += b;
    return w;
}

uint64_t Bitstring::to_uint() const {
    if (size() > 64)
        throw LengthMismatch("to_uint: string longer than 64 bits");
    uint64_t v = 0;
    for (uint8_t b : bits_) v = (v << 1) | b;
    return v;
}

std::string Bitstring::to_string() const {
    std::string s(size(), '0');
    for (size_t j = 0; j < size(); ++j)
        if (bits_[j]) s[j] = '1';
    return s;
}

std::string Bitstring::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s((size() + 3) / 4, '0');
    for (size_t d = 0; d < s.size(); ++d) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            size_t j = 4 * d + static_cast<size_t>(b);
            v = (v << 1) | (j < size() ? bits_[j] : 0);
        }
        s[d] = digits[v];
    }
    return s;
}

} // namespace krue
