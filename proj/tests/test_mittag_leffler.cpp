#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "psifrac/errors.hpp"
#include "psifrac/mittag_leffler.hpp"
#include "psifrac/special_functions.hpp"

using psifrac::gamma_fn;
using psifrac::mittag_leffler;

TEST_CASE("series reduces to the exponential at order one") {
    CHECK(mittag_leffler(1.0, 1.0, 1.0) ==
          Catch::Approx(std::exp(1.0)).epsilon(1e-13));
    CHECK(mittag_leffler(1.0, 1.0, -1.0) ==
          Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(mittag_leffler(1.0, 1.0, 3.5) ==
          Catch::Approx(std::exp(3.5)).epsilon(1e-13));
}

TEST_CASE("series hits the hyperbolic cosine identity") {
    // E_{2,1}(z^2) = cosh(z)
    CHECK(mittag_leffler(2.0, 1.0, 4.0) ==
          Catch::Approx(std::cosh(2.0)).epsilon(1e-13));
    CHECK(mittag_leffler(2.0, 1.0, 9.0) ==
          Catch::Approx(std::cosh(3.0)).epsilon(1e-13));
}

TEST_CASE("zero argument keeps only the leading term") {
    CHECK(mittag_leffler(0.5, 0.7, 0.0) ==
          Catch::Approx(1.0 / gamma_fn(0.7)).epsilon(1e-15));
    CHECK(mittag_leffler(0.3, 2.0, 0.0) == 1.0);  // Gamma(2) = 1 exactly
}

TEST_CASE("values dominate the leading term and grow with the argument") {
    for (double a : {0.4, 0.7, 1.0}) {
        for (double b : {0.6, 1.0, 1.4}) {
            double prev = 0.0;
            for (double z : {0.0, 0.5, 1.0, 2.0, 5.0}) {
                const double value = mittag_leffler(a, b, z);
                CHECK(value >= 1.0 / gamma_fn(b) - 1e-15);
                CHECK(value >= prev);  // all series terms are nonnegative
                prev = value;
            }
        }
    }
}

TEST_CASE("mild negative arguments stay accurate") {
    // Alternating but far from the cancellation regime.
    CHECK(mittag_leffler(0.5, 1.0, -0.5) > 0.0);
    CHECK(mittag_leffler(0.5, 1.0, -0.5) < 1.0);
    // E_{1,2}(z) = (e^z - 1)/z
    CHECK(mittag_leffler(1.0, 2.0, -2.0) ==
          Catch::Approx((std::exp(-2.0) - 1.0) / -2.0).epsilon(1e-12));
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(mittag_leffler(0.0, 1.0, 1.0), psifrac::invalid_input_error);
    CHECK_THROWS_AS(mittag_leffler(-0.5, 1.0, 1.0),
                    psifrac::invalid_input_error);
    CHECK_THROWS_AS(mittag_leffler(0.5, 0.0, 1.0), psifrac::invalid_input_error);
}

TEST_CASE("arguments outside the working range raise explicit errors") {
    CHECK_THROWS_AS(mittag_leffler(0.5, 1.0, 50.5),
                    psifrac::unsupported_range_error);
    CHECK_THROWS_AS(mittag_leffler(0.5, 1.0, -51.0),
                    psifrac::unsupported_range_error);
    // Deep alternating cancellation: the guard must refuse rather than
    // return a noise-dominated sum.
    CHECK_THROWS_AS(mittag_leffler(0.3, 1.0, -45.0),
                    psifrac::unsupported_range_error);
}
