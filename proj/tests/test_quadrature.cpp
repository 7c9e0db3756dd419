#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <complex>
#include <numbers>

#include "aggar/quadrature.hpp"

using namespace aggar;

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1 exactly") {
    for (unsigned n : {8u, 16u, 32u, 64u, 128u}) {
        const GaussRule& r = gauss_legendre(n);
        REQUIRE(r.order() == n);
        double wsum = 0.0;
        for (double w : r.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (unsigned d : {0u, 1u, n, 2 * n - 1}) {
            const double got = integrate_gauss([d](double x) { return std::pow(x, d); }, 0.0, 1.0, r);
            CHECK(got == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
        }
        CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    }
}

TEST_CASE("unsupported order is rejected") {
    CHECK_THROWS(gauss_legendre(10));
}

TEST_CASE("graded rule handles endpoint singularities") {
    GradedOptions opt;
    opt.exponents = {-0.5, 0.0};
    const double a = integrate_graded([](double x, double) { return 1.0 / std::sqrt(x); }, opt);
    CHECK(a == doctest::Approx(2.0).epsilon(1e-12));

    opt.exponents = {0.0, -0.7};
    const double b = integrate_graded([](double, double s) { return std::pow(s, -0.7); }, opt);
    CHECK(b == doctest::Approx(1.0 / 0.3).epsilon(1e-12));

    // int_0^1 log(1-x) dx = -1, integrable log singularity
    opt.exponents = {0.0, 0.0};
    const double c = integrate_graded([](double, double s) { return std::log(s); }, opt);
    CHECK(c == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("graded rule splits at breakpoints") {
    std::vector<double> bp{0.3};
    GradedOptions opt;
    opt.breakpoints = bp;
    const double v = integrate_graded([](double x, double) { return std::abs(x - 0.3); }, opt);
    CHECK(v == doctest::Approx((0.09 + 0.49) / 2.0).epsilon(1e-14));
}

TEST_CASE("graded rule accepts complex integrands") {
    const std::complex<double> z(0.3, 0.4);
    GradedOptions opt;
    const auto v = integrate_graded([&](double x, double) { return 1.0 / (1.0 - z * x); }, opt);
    const auto exact = -std::log(1.0 - z) / z;
    CHECK(std::abs(v - exact) < 1e-14);
}
