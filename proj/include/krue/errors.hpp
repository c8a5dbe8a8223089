#pragma once

#include <stdexcept>
#include <string>

namespace krue {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands belong to different field specs.
struct FieldMismatch : Error { using Error::Error; };
// Zero has no multiplicative inverse.
struct NonInvertible : Error { using Error::Error; };
// Hash seed u = 0 makes F_u non-invertible.
struct DegenerateSeed : Error { using Error::Error; };
// A bitstring argument has the wrong length.
struct LengthMismatch : Error { using Error::Error; };
// A numeric argument is outside its domain.
struct DomainError : Error { using Error::Error; };
// Protocol or code parameters violate a structural constraint.
struct ParamError : Error { using Error::Error; };
// The shared key reservoir ran out of fresh bits.
struct ReservoirExhausted : Error { using Error::Error; };
// A key-size formula was evaluated where its scheme rate is not positive.
struct RateExhausted : Error { using Error::Error; };
// Bad or inconsistent run configuration.
struct ConfigError : Error { using Error::Error; };

} // namespace krue
