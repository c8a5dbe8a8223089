#pragma once

// Systematic linear binary codes with bounded-distance decoding. A code
// is fixed by block length n, dimension k, correction radius t, and the
// k x (n-k) redundancy matrix of its systematic generator (1_k | R):
// encode(p) = p || p*R. decode returns the unique codeword within
// Hamming distance t of the input, or nothing when no codeword is that
// close.
//
// Registry ids: "identity:<n>" (n = k, t = 0), "hamming74" and
// "hamming74x<M>" (M copies of the [7,4] code, data bits first, then
// parity blocks, overall radius t = 1), "bch15_7", "bch31_16",
// "bch63_30" (primitive BCH codes with t = 2, 3, 6).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krue/bits.hpp"

namespace krue {

class CodeSpec {
public:
    // n = k code with no redundancy and t = 0.
    static CodeSpec identity(unsigned n);

    // The [7,4] Hamming code replicated over `blocks` blocks:
    // n = 7*blocks, k = 4*blocks, t = 1.
    static CodeSpec hamming74(unsigned blocks = 1);

    // Primitive BCH code of length n = 2^m - 1 correcting t errors;
    // k follows from the generator polynomial degree.
    static CodeSpec bch(unsigned m, unsigned t);

    // Parses a registry id (see list above).
    static CodeSpec from_registry(const std::string& id);

    // Arbitrary systematic code given by its redundancy rows. Decoding
    // falls back to exhaustive search, so this requires n <= 24 unless
    // the rows coincide with a registry construction.
    static CodeSpec from_rows(unsigned n, unsigned k, unsigned t,
                              std::vector<Bitstring> gamma);

    // Text format: "n <int>", "k <int>", "t <int>", then k lines
    // "gamma <hex>" holding the redundancy rows.
    static CodeSpec load(const std::string& path);
    void save(const std::string& path) const;

    unsigned n() const;
    unsigned k() const;
    unsigned t() const;
    const std::vector<Bitstring>& gamma() const;
    const std::string& id() const;

    // Structural equality over (n, k, t, gamma).
    bool operator==(const CodeSpec& other) const;
    bool operator!=(const CodeSpec& other) const { return !(*this == other); }

    struct Impl;

private:
    explicit CodeSpec(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;

    friend std::optional<struct DecodeResult> decode(const CodeSpec&, const Bitstring&);
};

struct DecodeResult {
    Bitstring message;
    unsigned corrected;
};

// p || p*R; the first k bits of the output are p.
Bitstring encode(const CodeSpec& spec, const Bitstring& p);

// (head * R) xor tail; zero exactly on codewords.
Bitstring syndrome(const CodeSpec& spec, const Bitstring& x);

// Bounded-distance decode: the message of the unique codeword within
// distance t of x, plus the number of bits corrected. Empty when no
// codeword lies within the radius.
std::optional<DecodeResult> decode(const CodeSpec& spec, const Bitstring& x);

// Exhaustive nearest-codeword reference restricted to radius t; ties at
// equal distance resolve to the lexicographically smallest message.
// Requires n <= 24.
std::optional<Bitstring> brute_force_decode(const CodeSpec& spec, const Bitstring& x);

} // namespace krue
