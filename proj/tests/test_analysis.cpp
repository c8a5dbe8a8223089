#include <cmath>

#include "doctest.h"
#include "krue/analysis.hpp"
#include "krue/channel.hpp"
#include "krue/errors.hpp"
#include "oracles.hpp"

using namespace krue;

TEST_CASE("entropy reference points") {
    CHECK(entropy(0.0) == 0.0);
    CHECK(entropy(0.5) == 1.0);
    CHECK(entropy(0.05) == doctest::Approx(0.28639695711595613).epsilon(1e-14));
    CHECK(entropy(0.25) == doctest::Approx(0.81127812445913286).epsilon(1e-14));
    // Frozen from an independent high-precision evaluation.
    CHECK(entropy(0.11) == doctest::Approx(0.499915958164528).epsilon(1e-13));
    CHECK(six_state_entropy(0.05) == doctest::Approx(0.5031837316805838).epsilon(1e-13));
    CHECK(six_state_entropy(0.0) == 0.0);
    CHECK(entropy_multi({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entropy_multi({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("rate identities hold exactly on a grid") {
    for (Encoding enc : {Encoding::FourState, Encoding::SixState}) {
        for (int i = 0; i < 100; ++i) {
            double beta = 0.25 * double(i) / 99.0;
            double qkd_otp = scheme_rate(beta, enc, Scheme::QkdOtp);
            double qkr = scheme_rate(beta, enc, Scheme::Qkr);
            double qkd_star = scheme_rate(beta, enc, Scheme::QkdKrueStar);
            double qkr_star = scheme_rate(beta, enc, Scheme::QkrKrueStar);
            double krue = scheme_rate(beta, enc, Scheme::Krue);
            CHECK(qkd_otp == doctest::Approx(qkr).epsilon(1e-12));
            CHECK(qkd_star == doctest::Approx(qkr_star).epsilon(1e-12));
            double h = entropy(beta);
            CHECK(krue == doctest::Approx(qkd_otp - h).epsilon(1e-12));
            if (enc == Encoding::FourState) {
                // The half-rate relation is specific to 2-basis encoding:
                // with 3 bases the two denominators no longer match.
                double qkr_gott = scheme_rate(beta, enc, Scheme::QkrGottesman);
                CHECK(qkr_gott == doctest::Approx(0.5 * qkd_star).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("unclonability always costs at least the recycling threshold") {
    for (Encoding enc : {Encoding::FourState, Encoding::SixState}) {
        for (int i = 0; i < 100; ++i) {
            double beta = 0.25 * double(i) / 99.0;
            RateReport rep = rates(beta, enc);
            CHECK(rep.ell_max_ue <= rep.ell_max_kr + 1e-15);
            if (beta == 0.0) {
                CHECK(rep.ell_max_ue == doctest::Approx(rep.ell_max_kr).epsilon(1e-15));
            } else if (rep.ell_max_ue > 0.0) {
                CHECK(rep.ell_max_ue < rep.ell_max_kr);
            }
        }
    }
}

TEST_CASE("noiseless rates") {
    for (Scheme s : {Scheme::QkdOtp, Scheme::Qkr, Scheme::Krue, Scheme::QkdKrueStar,
                     Scheme::QkrKrueStar}) {
        CHECK(scheme_rate(0.0, Encoding::FourState, s) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(scheme_rate(0.0, Encoding::SixState, s) == doctest::Approx(1.0).epsilon(1e-15));
    }
    // The halved variants start at 1/2, consistent with the identity
    // qkr_gottesman = qkd_krue_star / 2 that the grid test pins to 1e-12.
    CHECK(scheme_rate(0.0, Encoding::FourState, Scheme::QkdGottesman) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(scheme_rate(0.0, Encoding::FourState, Scheme::QkrGottesman) ==
          doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("scheme crossover against frozen bisection values") {
    auto cross = crossover(Scheme::Krue, Scheme::QkrGottesman, Encoding::FourState);
    REQUIRE(cross.has_value());
    CHECK(std::fabs(*cross - 0.0515376496301) < 1e-5);

    auto z1 = scheme_zero(Scheme::Krue, Encoding::FourState);
    REQUIRE(z1.has_value());
    CHECK(std::fabs(*z1 - 0.0614904700787) < 1e-5);
    auto z2 = scheme_zero(Scheme::QkdOtp, Encoding::FourState);
    REQUIRE(z2.has_value());
    CHECK(std::fabs(*z2 - 0.110027864438) < 1e-5);

    // Identical curves never cross.
    CHECK(!crossover(Scheme::QkdOtp, Scheme::Qkr, Encoding::FourState).has_value());
    CHECK(!crossover(Scheme::Krue, Scheme::Krue, Encoding::SixState).has_value());
}

TEST_CASE("total key size for a fixed message volume") {
    const double L = 1000.0;
    CHECK(key_size(0.05, L, Encoding::FourState, Scheme::Krue) ==
          doctest::Approx(17237.562003273883).epsilon(1e-12));
    CHECK(key_size(0.05, L, Encoding::FourState, Scheme::QkdKrueStar) ==
          doctest::Approx(11958.60148902243).epsilon(1e-12));
    CHECK(key_size(0.05, L, Encoding::FourState, Scheme::QkdGottesman) ==
          doctest::Approx(4011.1859357132076).epsilon(1e-12));
    // Past the scheme's threshold the requirement diverges.
    CHECK_THROWS_AS(key_size(0.2, L, Encoding::FourState, Scheme::Krue), RateExhausted);
    CHECK_THROWS_AS(key_size(-0.01, L, Encoding::FourState, Scheme::Krue), DomainError);
}

TEST_CASE("correctable-fraction probability, frozen reference values") {
    CHECK(p_corr(63, 6.0 / 63.0, 0.05) == doctest::Approx(0.96255542174544).epsilon(1e-12));
    CHECK(p_corr(63, 6.0 / 63.0, 0.25) == doctest::Approx(0.00176509973119561).epsilon(1e-10));
    CHECK(p_corr(126, 1.0 / 126.0, 0.05) == doctest::Approx(0.0119066247798576).epsilon(1e-12));
    CHECK(p_corr(126, 1.0 / 126.0, 0.25) == doctest::Approx(7.78e-15).epsilon(1e-2));
    CHECK(p_corr(10, 0.2, 0.5) == doctest::Approx(0.0546875).epsilon(1e-14));
    CHECK(p_corr(63, 1.0, 0.3) == 1.0);
    CHECK(p_corr(63, 0.1, 0.0) == 1.0);
    CHECK(p_corr(63, 0.1, 1.0) == 0.0);
}

TEST_CASE("correctable-fraction probability matches enumeration") {
    RandomStream rng(55);
    for (unsigned n : {8u, 12u, 16u}) {
        for (int i = 0; i < 6; ++i) {
            double beta = double(rng.below(1000)) / 999.0;
            double gamma = double(rng.below(1000)) / 999.0 * 0.5;
            CHECK(p_corr(n, beta, gamma) ==
                  doctest::Approx(oracle::p_corr_enum(n, beta, gamma)).epsilon(1e-12));
        }
    }
}

TEST_CASE("radius arithmetic avoids float boundary misses") {
    CHECK(floor_nbeta(63, 6.0 / 63.0) == 6);
    CHECK(floor_nbeta(126, 1.0 / 126.0) == 1);
    CHECK(floor_nbeta(20, 0.15) == 3);
    CHECK(floor_nbeta(10, 0.0) == 0);
    CHECK(floor_nbeta(15, 1.0) == 15);
}

TEST_CASE("rate table text output") {
    std::vector<double> grid = {0.0, 0.05, 0.1};
    std::string csv = rate_table_csv(grid, Encoding::FourState);
    CHECK(csv.substr(0, csv.find('\n')) == "beta,scheme,encoding,rate,rate_clamped");
    // 3 grid points x 7 schemes + header.
    size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 22);
    CHECK(csv.find("0.050000,krue,4state,") != std::string::npos);
    CHECK_THROWS_AS(rate_table_csv({0.3}, Encoding::FourState), DomainError);
}

TEST_CASE("clamped rates never go negative") {
    for (Encoding enc : {Encoding::FourState, Encoding::SixState}) {
        for (int i = 0; i <= 50; ++i) {
            double beta = 0.25 * double(i) / 50.0;
            for (Scheme s : {Scheme::QkdOtp, Scheme::Qkr, Scheme::QkdGottesman,
                             Scheme::QkrGottesman, Scheme::Krue, Scheme::QkdKrueStar,
                             Scheme::QkrKrueStar}) {
                CHECK(scheme_rate_clamped(beta, enc, s) >= 0.0);
            }
            // The linear schemes clamp pointwise at zero.
            for (Scheme s : {Scheme::QkdOtp, Scheme::Qkr, Scheme::Krue}) {
                double raw = scheme_rate(beta, enc, s);
                double clamped = scheme_rate_clamped(beta, enc, s);
                CHECK(clamped == doctest::Approx(std::max(0.0, raw)).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("scheme names round-trip") {
    for (Scheme s : {Scheme::QkdOtp, Scheme::Qkr, Scheme::QkdGottesman,
                     Scheme::QkrGottesman, Scheme::Krue, Scheme::QkdKrueStar,
                     Scheme::QkrKrueStar}) {
        CHECK(scheme_from_name(scheme_name(s)) == s);
    }
    CHECK_THROWS_AS(scheme_from_name("nope"), ParamError);
}
