#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "elgin/scaled.hpp"

using elgin::ScaledReal;
using elgin::ScaledSum;

TEST_CASE("scaled multiplication adds log magnitudes and multiplies signs") {
    auto a = ScaledReal::from_double(-3.5);
    auto b = ScaledReal::from_double(2.0);
    auto c = a * b;
    CHECK(c.sign == -1);
    CHECK(c.log_mag == doctest::Approx(std::log(7.0)).epsilon(1e-15));
    CHECK((a * ScaledReal::zero()).is_zero());
}

TEST_CASE("scaled round trip is exact to 1e-14 relative within range") {
    for (double v : {1.0, -1.0, 3.25e-20, 123456.789, -9.5e80}) {
        auto s = ScaledReal::from_double(v);
        CHECK(s.to_double() == doctest::Approx(v).epsilon(1e-14));
    }
    // near the ends of double range the one-ulp granularity of log_mag
    // itself costs ~|log| * 2^-52 relative
    for (double v : {3.25e-200, -7.75e250, 1e-300}) {
        auto s = ScaledReal::from_double(v);
        double tol = std::fabs(s.log_mag) * 4.4e-16 + 1e-15;
        CHECK(s.to_double() == doctest::Approx(v).epsilon(tol));
    }
    ScaledReal big{1, 699.0};
    CHECK(std::isfinite(big.to_double()));
}

TEST_CASE("scaled addition handles signs and cancellation") {
    auto a = ScaledReal::from_double(5.0);
    auto b = ScaledReal::from_double(-3.0);
    CHECK((a + b).to_double() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((b + a).to_double() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((a - a).is_zero());
    // magnitudes far outside double range still combine
    ScaledReal x{1, 5000.0}, y{1, 5000.0 + std::log(2.0)};
    auto z = x + y;
    CHECK(z.sign == 1);
    CHECK(z.log_mag == doctest::Approx(5000.0 + std::log(3.0)).epsilon(1e-13));
    auto w = y - x;
    CHECK(w.log_mag == doctest::Approx(5000.0).epsilon(1e-13));
}

TEST_CASE("scaled sum tracks positive and negative parts") {
    ScaledSum s;
    s.add(ScaledReal::from_double(1.0));
    s.add(ScaledReal::from_double(-0.25));
    s.add(ScaledReal::from_double(0.75));
    CHECK(s.value().to_double() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(s.magnitude_bound().to_double() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("integer powers") {
    auto a = ScaledReal::from_double(-2.0);
    CHECK(a.pow_int(3).to_double() == doctest::Approx(-8.0));
    CHECK(a.pow_int(2).to_double() == doctest::Approx(4.0));
    CHECK(ScaledReal::zero().pow_int(0).to_double() == 1.0);
}
