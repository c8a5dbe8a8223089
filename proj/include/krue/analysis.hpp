#pragma once

// Closed-form quantities for the protocol family: entropies, the
// probability that a bounded-distance decoder corrects a binomial error
// pattern, asymptotic communication rates of the encryption/key-recycling
// schemes under 4-state and 6-state encodings, mask-length thresholds,
// scheme crossover points, and total key-size formulas.

#include <optional>
#include <string>
#include <vector>

#include "krue/channel.hpp"

namespace krue {

// Binary entropy in bits; entropy(0) = entropy(1) = 0.
double entropy(double p);

// Sum of p_i * log2(1/p_i); probabilities must not exceed 1 in total.
double entropy_multi(const std::vector<double>& ps);

// Entropy of the 6-state disturbance distribution
// (1 - 3b/2, b/2, b/2, b/2); requires b <= 2/3.
double six_state_entropy(double beta);

// The error-count cap floor(n * beta), guarded against floating droop.
unsigned floor_nbeta(unsigned n, double beta);

// Probability that at most floor(n*beta) of n independent gamma-rate
// flips occur: sum_{c=0}^{floor(n beta)} C(n,c) gamma^c (1-gamma)^(n-c),
// accumulated in log space.
double p_corr(unsigned n, double beta, double gamma);

enum class Scheme {
    QkdOtp,
    Qkr,
    QkdGottesman,
    QkrGottesman,
    Krue,
    QkdKrueStar,
    QkrKrueStar,
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Raw asymptotic rate formula of a scheme at error rate beta (may be
// negative past the scheme's threshold). Requires 0 <= beta < 1/2.
double scheme_rate(double beta, Encoding enc, Scheme s);

// Rate clamped for reporting: schemes whose formula has a squared
// numerator are zeroed once their linear component is exhausted, the
// rest are floored at 0.
double scheme_rate_clamped(double beta, Encoding enc, Scheme s);

// All scheme rates (clamped) plus the mask-length thresholds per
// transmitted bit at one beta.
struct RateReport {
    double beta = 0;
    double qkd_otp = 0;
    double qkr = 0;
    double qkd_gottesman = 0;
    double qkr_gottesman = 0;
    double krue = 0;
    double qkd_krue_star = 0;
    double qkr_krue_star = 0;
    double ell_max_ue = 0;
    double ell_max_kr = 0;
};

RateReport rates(double beta, Encoding enc);

// Smallest beta in (0, 0.25] where the scheme's raw rate reaches zero.
std::optional<double> scheme_zero(Scheme s, Encoding enc);

// Beta where two schemes' rate curves cross, bisected to 1e-6 over the
// region where both are positive; empty when the curves never cross
// (including identical curves).
std::optional<double> crossover(Scheme a, Scheme b, Encoding enc);

// Total key bits consumed to send L message bits, leading order. Defined
// for Krue (encoding-aware), the KrueStar combination, and the Gottesman
// combination. Throws RateExhausted once the underlying rate is spent.
double key_size(double beta, double message_bits, Encoding enc, Scheme s);

// One row per (beta, scheme): "beta,scheme,encoding,rate,rate_clamped"
// with 6-decimal floats. Grid values must lie in [0, 0.25].
std::string rate_table_csv(const std::vector<double>& beta_grid, Encoding enc);

} // namespace krue
