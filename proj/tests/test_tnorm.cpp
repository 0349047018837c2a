#include <doctest.h>

#include <cmath>

#include "evonf/errors.hpp"
#include "evonf/rng.hpp"
#include "evonf/tnorm.hpp"
#include "oracles.hpp"

using namespace evonf;

TEST_CASE("tnorm: hand values") {
    // p = 1 reduces to 1 / (1/a + 1/b - 1).
    CHECK(tnorm_ss(0.8, 0.6, {1.0}) ==
          doctest::Approx(1.0 / (1.0 / 0.8 + 1.0 / 0.6 - 1.0)).epsilon(1e-12));
    CHECK(tnorm_ss(0.7, 1.0, {2.5}) == 0.7);
    CHECK(tnorm_ss(1.0, 0.7, {2.5}) == 0.7);
    CHECK(tnorm_ss(0.0, 0.9, {1.0}) == 0.0);
    CHECK(tnorm_ss(0.9, 0.0, {1.0}) == 0.0);
    CHECK(tnorm_ss(1.0, 1.0, {1.0}) == 1.0);
}

TEST_CASE("tnorm: identity law holds across the exponent range") {
    Rng rng(211);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform01();
        const double p = rng.uniform(1e-6, 200.0);
        CHECK(std::abs(tnorm_ss(a, 1.0, {p}) - a) <= 1e-9);
        CHECK(std::abs(tnorm_ss(1.0, a, {p}) - a) <= 1e-9);
    }
}

TEST_CASE("tnorm: commutativity is exact") {
    Rng rng(223);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform01();
        const double b = rng.uniform01();
        const TNormParam p{rng.uniform(0.01, 100.0)};
        CHECK(tnorm_ss(a, b, p) == tnorm_ss(b, a, p));
    }
}

TEST_CASE("tnorm: monotone in each argument") {
    Rng rng(227);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform01();
        const double a2 = a + rng.uniform(0.0, 1.0 - a);
        const double b = rng.uniform01();
        const TNormParam p{rng.uniform(0.01, 50.0)};
        CHECK(tnorm_ss(a, b, p) <= tnorm_ss(a2, b, p));
    }
}

TEST_CASE("tnorm: output bounded by min(a, b)") {
    Rng rng(229);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform01();
        const double b = rng.uniform01();
        const double t = tnorm_ss(a, b, {rng.uniform(0.01, 100.0)});
        REQUIRE(t >= 0.0);
        REQUIRE(t <= std::min(a, b) + 1e-15);
    }
}

TEST_CASE("tnorm: small exponent approaches the product") {
    CHECK(std::abs(tnorm_ss(0.8, 0.6, {1e-6}) - 0.48) < 1e-4);
    Rng rng(233);
    for (int i = 0; i < 500; ++i) {
        const double a = rng.uniform(0.05, 1.0);
        const double b = rng.uniform(0.05, 1.0);
        CHECK(std::abs(tnorm_ss(a, b, {1e-6}) - a * b) < 1e-4);
    }
}

TEST_CASE("tnorm: large exponent approaches the minimum") {
    CHECK(std::abs(tnorm_ss(0.8, 0.6, {200.0}) - 0.6) < 1e-2);
    Rng rng(239);
    for (int i = 0; i < 500; ++i) {
        const double a = rng.uniform(0.05, 1.0);
        const double b = rng.uniform(0.05, 1.0);
        CHECK(std::abs(tnorm_ss(a, b, {200.0}) - std::min(a, b)) < 1e-2);
    }
}

TEST_CASE("tnorm: agrees with the naive reference") {
    Rng rng(241);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform01();
        const double b = rng.uniform01();
        const double p = std::exp(rng.uniform(std::log(0.01), std::log(100.0)));
        CHECK(tnorm_ss(a, b, {p}) == doctest::Approx(oracle::tnorm_naive(a, b, p)).epsilon(1e-12));
    }
}

TEST_CASE("tnorm: non-positive exponent throws") {
    CHECK_THROWS_AS((void)tnorm_ss(0.5, 0.5, {0.0}), InvalidParameter);
    CHECK_THROWS_AS((void)tnorm_ss(0.5, 0.5, {-1.0}), InvalidParameter);
}

TEST_CASE("tnorm: exponent range constants") {
    CHECK(kTNormParamMin == 0.01);
    CHECK(kTNormParamMax == 100.0);
}
