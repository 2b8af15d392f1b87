#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "hazardrate/errors.hpp"
#include "hazardrate/finmath.hpp"

using hazardrate::Errc;
using hazardrate::Error;
using hazardrate::finmath::annualize;
using hazardrate::finmath::annuity_factor;

TEST_CASE("zero-rate limit is exactly 1/n") {
    CHECK(annuity_factor(0.0, 20) == 0.05);
    CHECK(annuity_factor(0.0, 1) == 1.0);
    CHECK(annuity_factor(0.0, 30) == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
}

TEST_CASE("known capital recovery factors") {
    CHECK(annuity_factor(0.08, 20) == doctest::Approx(0.1018522).epsilon(1e-6));
    CHECK(annuity_factor(0.08, 10) == doctest::Approx(0.1490295).epsilon(1e-6));
    CHECK(annuity_factor(0.05, 1) == doctest::Approx(1.05).epsilon(1e-12));
}

TEST_CASE("annualized overnight costs") {
    CHECK(annualize(470.0, 0.08, 10) == doctest::Approx(70.04).epsilon(2e-4));
    CHECK(annualize(0.0, 0.12, 25) == 0.0);
    CHECK(annualize(1000.0, 0.0, 30) == doctest::Approx(1000.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_WITH_AS(annuity_factor(-0.01, 10), doctest::Contains(">= 0"), Error);
    CHECK_THROWS_AS(annuity_factor(0.08, 0), Error);
    CHECK_THROWS_AS(annuity_factor(0.08, -3), Error);
    try {
        annuity_factor(-1e-9, 5);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::negative_rate);
    }
    try {
        annuity_factor(0.05, 0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::zero_lifetime);
    }
}

TEST_CASE("factor increases in rate and decreases in lifetime") {
    std::mt19937 rng(20230817);
    std::uniform_real_distribution<double> rate(0.0, 0.5);
    std::uniform_int_distribution<int> years(1, 40);
    for (int rep = 0; rep < 500; ++rep) {
        double i1 = rate(rng), i2 = rate(rng);
        if (i1 > i2) std::swap(i1, i2);
        int n = years(rng);
        if (i1 < i2) CHECK(annuity_factor(i1, n) < annuity_factor(i2, n));

        int n1 = years(rng), n2 = years(rng);
        if (n1 > n2) std::swap(n1, n2);
        double i = rate(rng) + 0.01;
        if (n1 < n2) CHECK(annuity_factor(i, n1) > annuity_factor(i, n2));
    }
}

TEST_CASE("lifetime payments always cover the principal") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> rate(0.0, 0.5);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 1 + static_cast<int>(rep % 40);
        double i = rate(rng);
        double total = n * annuity_factor(i, n);
        CHECK(total >= 1.0);
        if (i == 0.0) CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(20 * annuity_factor(0.0, 20) == 1.0);
}

TEST_CASE("continuous at vanishing rates") {
    for (int n : {1, 5, 10, 20, 30, 40}) {
        double limit = 1.0 / n;
        CHECK(std::fabs(annuity_factor(1e-12, n) - limit) / limit < 1e-9);
    }
}
