#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bergman/log_real.hpp"
#include "test_support.hpp"

using bergman::LogReal;
using bergman::test::Rng;

TEST_CASE("construction and round trip") {
    CHECK(LogReal::zero().is_zero());
    CHECK(LogReal::one().to_double() == 1.0);
    CHECK(LogReal::from_double(-3.5).to_double() == doctest::Approx(-3.5));
    CHECK(LogReal::from_double(0.0).is_zero());
    CHECK(LogReal::from_log(+1, 2.0).to_double() == doctest::Approx(std::exp(2.0)));
    // overflow-range values stay exact in the log domain
    LogReal huge = LogReal::from_log(+1, 5000.0);
    CHECK((huge * huge).log_magnitude() == doctest::Approx(10000.0));
    CHECK(std::isinf(huge.to_double()));
}

TEST_CASE("field arithmetic properties") {
    Rng rng(42);
    for (int i = 0; i < 2000; ++i) {
        double la = rng.in(-600, 600), lb = rng.in(-600, 600);
        LogReal a = LogReal::from_log(rng.coin() ? 1 : -1, la);
        LogReal b = LogReal::from_log(rng.coin() ? 1 : -1, lb);
        // log round trip: absolute log error ~ ulp(|la|+|lb|), i.e. ~1e-13 rel
        LogReal prod_quot = (a * b) / b;
        CHECK(bergman::relative_difference(prod_quot, a) < 1e-12);
        // additive round trip, same sign and comparable magnitude; the
        // recovered value loses ulp(|log|) amplified by e^{|la-lb|}
        if (a.sign() == b.sign() && std::fabs(la - lb) < 5) {
            LogReal back = (a + b) - b;
            CHECK(bergman::relative_difference(back, a) < 1e-10);
        }
        // comparisons agree with sign/log ordering
        double da = a.sign() * la, db = b.sign() * lb;  // proxy ordering
        if (a.sign() != b.sign())
            CHECK((a < b) == (a.sign() < b.sign()));
        else if (la != lb)
            CHECK((a < b) == (da < db));
    }
}

TEST_CASE("geometric series of two_pow") {
    LogReal sum;
    for (int k = 1; k <= 60; ++k) sum += LogReal::two_pow(-k);
    CHECK(sum.to_double() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(LogReal::two_pow(-3).to_double() == doctest::Approx(0.125));
}

TEST_CASE("cancellation flag") {
    LogReal x = LogReal::from_double(1.0);
    LogReal y = LogReal::from_log(+1, 1e-13);  // |log gap| < 1e-12
    LogReal diff = x - y;
    CHECK(diff.lost_precision());
    CHECK((x - x).is_zero());
    CHECK((x - x).lost_precision());
    LogReal safe = LogReal::from_double(1.0) - LogReal::from_double(0.25);
    CHECK(!safe.lost_precision());
    CHECK(safe.to_double() == doctest::Approx(0.75));
    // the flag is sticky through later operations
    CHECK((diff * LogReal::from_double(2.0)).lost_precision());
}

TEST_CASE("signed sums and powers") {
    LogReal a = LogReal::from_double(3.0);
    LogReal b = LogReal::from_double(-4.0);
    CHECK((a + b).to_double() == doctest::Approx(-1.0));
    CHECK((a - b).to_double() == doctest::Approx(7.0));
    CHECK(LogReal::from_double(-2.0).pow_int(3).to_double() == doctest::Approx(-8.0));
    CHECK(LogReal::from_double(-2.0).squared().to_double() == doctest::Approx(4.0));
    CHECK(LogReal::from_double(9.0).sqrt().to_double() == doctest::Approx(3.0));
    CHECK_THROWS_AS(LogReal::from_double(-1.0).sqrt(), std::domain_error);
    CHECK_THROWS_AS(a / LogReal::zero(), std::domain_error);
}

TEST_CASE("log_factorial") {
    CHECK(std::exp(bergman::log_factorial(5)) == doctest::Approx(120.0));
    CHECK(bergman::log_factorial(0) == doctest::Approx(0.0));
    // 100! is far past double range but exact enough in logs
    CHECK(bergman::log_factorial(100) == doctest::Approx(363.73937555556349).epsilon(1e-12));
    CHECK_THROWS_AS(bergman::log_factorial(-1), std::domain_error);
}

TEST_CASE("relative_difference") {
    using bergman::relative_difference;
    CHECK(relative_difference(LogReal::zero(), LogReal::zero()) == 0.0);
    CHECK(relative_difference(LogReal::from_double(2.0), LogReal::from_double(2.0)) == 0.0);
    CHECK(relative_difference(LogReal::from_double(1.0), LogReal::from_double(1.0 + 1e-9)) ==
          doctest::Approx(1e-9).epsilon(1e-3));
}
