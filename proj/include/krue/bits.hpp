#pragma once

// Bit strings with explicit length.
//
// Convention used throughout: index 0 is the leftmost position of the
// string, i.e. the first bit written on paper. When a string of length L
// is read as a polynomial over GF(2), position j carries the coefficient
// of x^(L-1-j), so the "most significant bits" of a field element are the
// string prefix. Hex encoding packs four positions per digit, left to
// right, padding the tail of the final digit with zeros.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace krue {

class Bitstring {
public:
    Bitstring() = default;
    explicit Bitstring(size_t len) : bits_(len, 0) {}

    static Bitstring zeros(size_t len) { return Bitstring(len); }
    // Low `len` bits of `value`, most significant first.
    static Bitstring from_uint(uint64_t value, size_t len);
    // "1011" -> the 4-bit string 1011.
    static Bitstring from_string(std::string_view s);
    // Hex digits -> `len` bits (len <= 4*digits; tail padding must be zero).
    static Bitstring from_hex(std::string_view hex, size_t len);

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    int operator[](size_t j) const { return bits_[j]; }
    int at(size_t j) const;
    void set(size_t j, int v);

    Bitstring operator^(const Bitstring& other) const;
    Bitstring& operator^=(const Bitstring& other);
    // Concatenation: this followed by other.
    Bitstring concat(const Bitstring& other) const;
    Bitstring slice(size_t pos, size_t len) const;
    Bitstring prefix(size_t len) const { return slice(0, len); }
    Bitstring suffix(size_t len) const { return slice(size() - len, len); }

    size_t weight() const;
    bool is_zero() const { return weight() == 0; }

    uint64_t to_uint() const; // requires size() <= 64
    std::string to_string() const;
    std::string to_hex() const;

    bool operator==(const Bitstring& other) const { return bits_ == other.bits_; }
    bool operator!=(const Bitstring& other) const { return bits_ != other.bits_; }
    // Lexicographic, for deterministic tie-breaking.
    bool operator<(const Bitstring& other) const { return bits_ < other.bits_; }

private:
    std::vector<uint8_t> bits_;
};

} // namespace krue
