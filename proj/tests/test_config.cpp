#include "doctest.h"
#include "krue/config.hpp"
#include "krue/errors.hpp"

using namespace krue;

namespace {

bool rejects(const char* text) {
    try {
        parse_config(text);
    } catch (const ConfigError&) {
        return true;
    }
    return false;
}

const char* kFullConfig =
    "# session\n"
    "[simulate]\n"
    "n = 126\n"
    "k = 72\n"
    "ell = 72\n"
    "lambda = 8\n"
    "beta = 0.0079365079365079361\n"
    "encoding = 4state\n"
    "code-id = hamming74x18\n"
    "N = 100\n"
    "channel = bsc\n"
    "gamma = 0.002\n"
    "seed = 42\n"
    "\n"
    "[rates]\n"
    "points = 101\n"
    "\n"
    "[attack]\n"
    "encoding = 4state\n"
    "code-id = bch63_30\n"
    "qubits = 100000\n"
    "N = 10000\n";

} // namespace

TEST_CASE("a full config parses into every section") {
    RunConfig cfg = parse_config(kFullConfig);
    REQUIRE(cfg.simulate.has_value());
    REQUIRE(cfg.rates.has_value());
    REQUIRE(cfg.attack.has_value());
    CHECK(cfg.simulate->rounds == 100);
    CHECK(cfg.simulate->gamma == 0.002);
    CHECK(cfg.simulate->seed == 42);
    CHECK(cfg.simulate->channel == "bsc");
    CHECK(cfg.attack->channel == "intercept-resend"); // default
    CHECK(cfg.rates->points == 101);
    CHECK(cfg.rates->encoding == "both");

    ProtocolParams params = cfg.simulate->params();
    CHECK(params.mu_len() == 1);
    CHECK(cfg.simulate->channel_model().kind() == ChannelModel::Kind::Bsc);
}

TEST_CASE("dump and reload give back the same run") {
    RunConfig cfg = parse_config(kFullConfig);
    std::string dumped = cfg.dump();
    RunConfig again = parse_config(dumped);
    CHECK(again.dump() == dumped);
    CHECK(again.simulate->params().mu_len() == 1);
    CHECK(again.simulate->seed == cfg.simulate->seed);
    CHECK(again.rates->grid().size() == 101);
    CHECK(again.rates->grid().front() == 0.0);
    CHECK(again.rates->grid().back() == 0.25);
}

TEST_CASE("malformed configs are rejected") {
    CHECK(rejects("[simulate]\nn = 5\n"));            // missing required keys
    CHECK(rejects("[simulate]\nbogus = 1\n"));        // unknown key
    CHECK(rejects("[mystery]\nx = 1\n"));             // unknown section
    CHECK(rejects("n = 5\n"));                        // key outside any section
    CHECK(rejects("[rates]\npoints = 1\n"));          // degenerate grid
    CHECK(rejects("[rates]\nbeta-max = 0.3\n"));      // grid beyond 1/4
    CHECK(rejects("[rates]\npoints = 10\npoints = 20\n"));
    CHECK(rejects("[rates]\n[rates]\n"));
    CHECK(rejects("[rates]\npoints\n"));              // no equals sign
    CHECK(rejects("[rates]\npoints = ten\n"));        // not a number
    CHECK(rejects("[attack]\nencoding = 4state\ncode-id = x\nqubits = 1\nN = 1\ngamma = 0.1\n"));
    CHECK(rejects(""));                               // no sections at all
    CHECK(rejects("[simulate\nn = 1\n"));             // unterminated header
}

TEST_CASE("comments, blank lines, and channel aliases") {
    RunConfig cfg = parse_config(
        "# leading comment\n"
        "[attack]\n"
        "encoding = 6state   # inline comment\n"
        "\n"
        "code-id = identity:8\n"
        "channel = none\n"
        "qubits = 10\n"
        "N = 5\n");
    CHECK(cfg.attack->encoding == Encoding::SixState);
    CHECK(cfg.attack->channel == "ideal"); // canonical form of "none"
    CHECK(cfg.attack->channel_model().kind() == ChannelModel::Kind::Ideal);
}

TEST_CASE("encoding names round-trip") {
    CHECK(encoding_name(Encoding::FourState) == std::string("4state"));
    CHECK(encoding_name(Encoding::SixState) == std::string("6state"));
    CHECK(encoding_from_name("4state") == Encoding::FourState);
    CHECK(encoding_from_name("6state") == Encoding::SixState);
    CHECK_THROWS_AS(encoding_from_name("8state"), ConfigError);
}
