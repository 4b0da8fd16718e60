#include <doctest.h>

#include <cmath>

#include "colombeau/bump.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/quadrature.hpp"

using namespace colombeau;
using mollifier::Bump;
using mollifier::MomentBump;
using mollifier::standard_bump;

// Independent quadrature value of int exp(-1/(1-x^2)) dx, pinned as a
// regression constant (computed with 30-digit arithmetic).
static constexpr double kRawIntegral = 0.44399381616807943782;

TEST_CASE("bump normalization") {
    const Bump& b = standard_bump();

    double integral = integrate([&](double x) { return b.value(x); }, -1.0, 1.0,
                                1e-13, 1e-15);
    CHECK(std::abs(integral - 1.0) <= 1e-10);

    CHECK(b.normalization() == doctest::Approx(1.0 / kRawIntegral).epsilon(1e-12));
    CHECK(b.value(0.0) ==
          doctest::Approx(std::exp(-1.0) / kRawIntegral).epsilon(1e-12));

    // compact support, exactly
    CHECK(b.value(1.0) == 0.0);
    CHECK(b.value(-1.0) == 0.0);
    CHECK(b.value(1.5) == 0.0);
    CHECK(b.derivative(1.0, 3) == 0.0);
}

TEST_CASE("bump derivatives against finite differences") {
    const Bump& b = standard_bump();
    const double h = 1e-5;
    for (double x : {-0.8, -0.33, 0.0, 0.21, 0.6, 0.95}) {
        for (int n : {1, 2, 3}) {
            double fd =
                (b.derivative(x + h, n - 1) - b.derivative(x - h, n - 1)) / (2.0 * h);
            double an = b.derivative(x, n);
            CHECK(an == doctest::Approx(fd).epsilon(1e-6).scale(
                            std::max(1.0, std::abs(an))));
        }
    }
    // odd derivative of the even profile vanishes at 0
    CHECK(b.derivative(0.0, 1) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("cdf table") {
    const Bump& b = standard_bump();
    CHECK(b.cdf(-1.0) == 0.0);
    CHECK(b.cdf(1.0) == 1.0);
    CHECK(b.cdf(-2.0) == 0.0);
    CHECK(b.cdf(3.0) == 1.0);
    CHECK(b.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-10));

    // monotone
    double prev = -1.0;
    for (int i = 0; i <= 2000; ++i) {
        double v = b.cdf(-1.0 + 2.0 * i / 2000);
        CHECK(v >= prev);
        prev = v;
    }

    // matches quadrature at off-node points
    for (double x : {-0.73, -0.25001, 0.111, 0.5003, 0.87}) {
        double q = integrate([&](double t) { return b.value(t); }, -1.0, x, 1e-12, 1e-15);
        CHECK(b.cdf(x) == doctest::Approx(q).epsilon(1e-9));
    }
}

TEST_CASE("moment bump") {
    SUBCASE("M = 0 is the plain bump") {
        MomentBump mb(0);
        REQUIRE(mb.polynomial().size() == 1);
        CHECK(mb.polynomial()[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mb.value(0.3) == doctest::Approx(standard_bump().value(0.3)).epsilon(1e-12));
    }

    SUBCASE("M = 2 kills the first two moments") {
        MomentBump mb(2);
        double m0 = integrate([&](double x) { return mb.value(x); }, -1.0, 1.0, 1e-12, 1e-15);
        double m1 = integrate([&](double x) { return x * mb.value(x); }, -1.0, 1.0, 1e-12, 1e-15);
        double m2 = integrate([&](double x) { return x * x * mb.value(x); }, -1.0, 1.0, 1e-12, 1e-15);
        CHECK(std::abs(m0 - 1.0) <= 1e-8);
        CHECK(std::abs(m1) <= 1e-8);
        CHECK(std::abs(m2) <= 1e-8);
        // symmetric base: odd polynomial coefficients vanish
        CHECK(std::abs(mb.polynomial()[1]) <= 1e-10);
    }

    SUBCASE("odd coefficients stay zero up to M = 6") {
        MomentBump mb(6);
        for (std::size_t i = 1; i < mb.polynomial().size(); i += 2)
            CHECK(std::abs(mb.polynomial()[i]) <= 1e-10);
        CHECK(mb.condition_estimate() < 1e12);
    }

    SUBCASE("rejects M > 10") {
        CHECK_THROWS_AS(MomentBump(11), DomainError);
        CHECK_THROWS_AS(MomentBump(-1), DomainError);
    }
}

TEST_CASE("quadrature flags genuine non-convergence") {
    // smooth integrand: fine
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // integrable endpoint singularity defeats the fixed-depth refinement
    CHECK_THROWS_AS(integrate([](double x) { return std::pow(x, -0.95); }, 0.0, 1.0,
                              1e-10, 1e-14),
                    QuadratureError);
}
