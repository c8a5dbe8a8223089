#include "krue/analysis.hpp"

#include <cmath>
#include <cstdio>

#include "krue/errors.hpp"

namespace krue {

double entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

double entropy_multi(const std::vector<double>& ps) {
    double s = 0.0, total = 0.0;
    for (double p : ps) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
        total += p;
        if (p > 0.0) s -= p * std::log2(p);
    }
    if (total > 1.0 + 1e-9) throw DomainError("probabilities sum past 1");
    return s;
}

double six_state_entropy(double beta) {
    if (!(beta >= 0.0 && beta <= 2.0 / 3.0)) {
        throw DomainError("6-state disturbance distribution needs beta <= 2/3");
    }
    return entropy_multi({1.0 - 1.5 * beta, beta / 2.0, beta / 2.0, beta / 2.0});
}

unsigned floor_nbeta(unsigned n, double beta) {
    double v = std::floor(double(n) * beta + 1e-9);
    if (v < 0.0) return 0;
    if (v > double(n)) return n;
    return unsigned(v);
}

double p_corr(unsigned n, double beta, double gamma) {
    if (n < 1) throw DomainError("block length must be positive");
    if (!(beta >= 0.0 && beta <= 1.0) || !(gamma >= 0.0 && gamma <= 1.0)) {
        throw DomainError("rates must lie in [0, 1]");
    }
    unsigned limit = floor_nbeta(n, beta);
    if (limit >= n) return 1.0;
    if (gamma == 0.0) return 1.0;
    if (gamma == 1.0) return 0.0;
    double lg = std::log(gamma), l1g = std::log1p(-gamma), lnf = std::lgamma(double(n) + 1.0);
    double sum = 0.0;
    for (unsigned c = 0; c <= limit; ++c) {
        double lc = lnf - std::lgamma(double(c) + 1.0) - std::lgamma(double(n - c) + 1.0);
        sum += std::exp(lc + double(c) * lg + double(n - c) * l1g);
    }
    return sum < 1.0 ? sum : 1.0;
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::QkdOtp: return "qkd_otp";
        case Scheme::Qkr: return "qkr";
        case Scheme::QkdGottesman: return "qkd_gottesman";
        case Scheme::QkrGottesman: return "qkr_gottesman";
        case Scheme::Krue: return "krue";
        case Scheme::QkdKrueStar: return "qkd_krue_star";
        case Scheme::QkrKrueStar: return "qkr_krue_star";
    }
    throw ParamError("unhandled scheme"); // unreachable
}

Scheme scheme_from_name(const std::string& name) {
    for (Scheme s : {Scheme::QkdOtp, Scheme::Qkr, Scheme::QkdGottesman,
                     Scheme::QkrGottesman, Scheme::Krue, Scheme::QkdKrueStar,
                     Scheme::QkrKrueStar}) {
        if (name == scheme_name(s)) return s;
    }
    throw ParamError("unknown scheme name: " + name);
}

namespace {

void check_beta(double beta) {
    if (!(beta >= 0.0 && beta < 0.5)) throw DomainError("rates need 0 <= beta < 1/2");
}

// True for the schemes built from a squared linear term; their clamped
// rate is zero as soon as that term is.
bool squared_form(Scheme s) {
    return s == Scheme::QkdGottesman || s == Scheme::QkrGottesman ||
           s == Scheme::QkdKrueStar || s == Scheme::QkrKrueStar;
}

} // namespace

double scheme_rate(double beta, Encoding enc, Scheme s) {
    check_beta(beta);
    double h = entropy(beta);
    if (enc == Encoding::FourState) {
        double lin = 1.0 - 2.0 * h;
        switch (s) {
            case Scheme::QkdOtp:
            case Scheme::Qkr: return lin;
            case Scheme::Krue: return 1.0 - 3.0 * h;
            case Scheme::QkdKrueStar:
            case Scheme::QkrKrueStar: return lin * lin / (1.0 - h);
            case Scheme::QkdGottesman:
            case Scheme::QkrGottesman: return 0.5 * lin * lin / (1.0 - h);
        }
    } else {
        double H = six_state_entropy(beta);
        double lin = 1.0 - H;
        switch (s) {
            case Scheme::QkdOtp:
            case Scheme::Qkr: return lin;
            case Scheme::Krue: return 1.0 - H - h;
            case Scheme::QkdKrueStar:
            case Scheme::QkrKrueStar: return lin * lin / (1.0 - H + h);
            case Scheme::QkdGottesman:
            case Scheme::QkrGottesman: return lin * lin / (2.0 - H);
        }
    }
    throw ParamError("unhandled scheme"); // unreachable
}

double scheme_rate_clamped(double beta, Encoding enc, Scheme s) {
    if (squared_form(s)) {
        double lin = enc == Encoding::FourState ? 1.0 - 2.0 * entropy(beta)
                                                : 1.0 - six_state_entropy(beta);
        if (lin <= 0.0) return 0.0;
    }
    double r = scheme_rate(beta, enc, s);
    return r > 0.0 ? r : 0.0;
}

RateReport rates(double beta, Encoding enc) {
    check_beta(beta);
    RateReport rep;
    rep.beta = beta;
    rep.qkd_otp = scheme_rate_clamped(beta, enc, Scheme::QkdOtp);
    rep.qkr = scheme_rate_clamped(beta, enc, Scheme::Qkr);
    rep.qkd_gottesman = scheme_rate_clamped(beta, enc, Scheme::QkdGottesman);
    rep.qkr_gottesman = scheme_rate_clamped(beta, enc, Scheme::QkrGottesman);
    rep.krue = scheme_rate_clamped(beta, enc, Scheme::Krue);
    rep.qkd_krue_star = scheme_rate_clamped(beta, enc, Scheme::QkdKrueStar);
    rep.qkr_krue_star = scheme_rate_clamped(beta, enc, Scheme::QkrKrueStar);
    double h = entropy(beta);
    double ue, kr;
    if (enc == Encoding::FourState) {
        ue = 1.0 - 2.0 * h;
        kr = (1.0 - h) * (1.0 - h);
    } else {
        double H = six_state_entropy(beta);
        ue = 1.0 - H;
        kr = (1.0 - h) * (1.0 + h - H);
    }
    rep.ell_max_ue = ue > 0.0 ? ue : 0.0;
    rep.ell_max_kr = kr > 0.0 ? kr : 0.0;
    return rep;
}

namespace {

// First sign change of fn over a fine grid on (0, 0.25], refined by
// bisection to 1e-6. `live` cuts the scan off once a curve is spent.
template <typename Fn, typename Live>
std::optional<double> grid_bisect(Fn fn, Live live) {
    const int steps = 4096;
    double prev_b = 0.25 / steps;
    if (!live(prev_b)) return std::nullopt;
    double prev_d = fn(prev_b);
    for (int i = 2; i <= steps; ++i) {
        double b = 0.25 * i / steps;
        if (!live(b)) return std::nullopt;
        double d = fn(b);
        if (prev_d * d < 0.0) {
            double lo = prev_b, hi = b;
            while (hi - lo > 1e-6) {
                double mid = 0.5 * (lo + hi);
                if (fn(lo) * fn(mid) <= 0.0) hi = mid;
                else lo = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_b = b;
        prev_d = d;
    }
    return std::nullopt;
}

} // namespace

std::optional<double> scheme_zero(Scheme s, Encoding enc) {
    return grid_bisect([&](double b) { return scheme_rate(b, enc, s); },
                       [](double) { return true; });
}

std::optional<double> crossover(Scheme a, Scheme b, Encoding enc) {
    if (a == b) return std::nullopt;
    return grid_bisect(
        [&](double x) { return scheme_rate(x, enc, a) - scheme_rate(x, enc, b); },
        [&](double x) {
            return scheme_rate(x, enc, a) > 0.0 && scheme_rate(x, enc, b) > 0.0;
        });
}

double key_size(double beta, double message_bits, Encoding enc, Scheme s) {
    check_beta(beta);
    if (!(message_bits > 0.0)) throw DomainError("message size must be positive");
    double h = entropy(beta);
    switch (s) {
        case Scheme::Krue: {
            double r = scheme_rate(beta, enc, Scheme::Krue);
            if (r <= 0.0) throw RateExhausted("scheme rate is zero at this beta");
            double log_b = std::log2(double(basis_count(enc)));
            return message_bits * (r + 1.0 + h + log_b) / r;
        }
        case Scheme::QkdKrueStar:
        case Scheme::QkrKrueStar: {
            double lin = 1.0 - 2.0 * h;
            if (lin <= 0.0) throw RateExhausted("scheme rate is zero at this beta");
            return message_bits * (1.0 + 2.0 / (lin * lin));
        }
        case Scheme::QkdGottesman:
        case Scheme::QkrGottesman: {
            double lin = 1.0 - 2.0 * h;
            if (lin <= 0.0) throw RateExhausted("scheme rate is zero at this beta");
            return message_bits * (2.0 - h) / lin;
        }
        default:
            throw ParamError("no key-size formula for this scheme");
    }
}

std::string rate_table_csv(const std::vector<double>& beta_grid, Encoding enc) {
    std::string out = "beta,scheme,encoding,rate,rate_clamped\n";
    const char* enc_name = enc == Encoding::FourState ? "4state" : "6state";
    char buf[160];
    for (double beta : beta_grid) {
        if (!(beta >= 0.0 && beta <= 0.25)) {
            throw DomainError("rate grid must lie inside [0, 0.25]");
        }
        for (Scheme s : {Scheme::QkdOtp, Scheme::Qkr, Scheme::QkdGottesman,
                         Scheme::QkrGottesman, Scheme::Krue, Scheme::QkdKrueStar,
                         Scheme::QkrKrueStar}) {
            std::snprintf(buf, sizeof buf, "%.6f,%s,%s,%.6f,%.6f\n", beta,
                          scheme_name(s), enc_name, scheme_rate(beta, enc, s),
                          scheme_rate_clamped(beta, enc, s));
            out += buf;
        }
    }
    return out;
}

} // namespace krue
