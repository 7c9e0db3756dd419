#include <doctest.h>

#include <cmath>
#include <vector>

#include "aggar/complexfn.hpp"
#include "aggar/errors.hpp"
#include "aggar/moments.hpp"
#include "aggar/wold.hpp"
#include "oracles.hpp"

using namespace aggar;

namespace {

std::vector<DistributionSpec> five_families() {
    return {DistributionSpec::beta(2, 3), DistributionSpec::uniform(), DistributionSpec::polynomial({0, 6, -6}),
            DistributionSpec::dirac(0.5), DistributionSpec::tabulated({0, 1, 2, 1, 0})};
}

// I_k = int_0^1 x(x-1)...(x-k+1) dx by Simpson, for small k.
double falling_factorial_integral(int k) {
    return oracle::simpson(
        [k](double x) {
            double p = 1.0;
            for (int j = 0; j < k; ++j) p *= x - j;
            return p;
        },
        0, 1, 2000);
}

}  // namespace

TEST_CASE("uniform AR coefficients") {
    const auto a = ar_from_ma(uniform_moments(3));
    CHECK(a[1] == 0.5);
    CHECK(a[2] == doctest::Approx(1.0 / 12).epsilon(1e-15));
    CHECK(a[3] == doctest::Approx(1.0 / 24).epsilon(1e-15));
    CHECK(a[2] == doctest::Approx(std::abs(falling_factorial_integral(2)) / 2).epsilon(1e-12));
    CHECK(a[3] == doctest::Approx(std::abs(falling_factorial_integral(3)) / 6).epsilon(1e-12));
}

TEST_CASE("Dirac AR coefficients vanish beyond the first") {
    for (double phi : {0.0, 0.3, 0.9}) {
        const auto a = ar_from_ma(dirac_moments(phi, 50));
        CHECK(a[1] == phi);
        for (std::size_t k = 2; k <= 50; ++k) CHECK(std::abs(a[k]) <= 1e-15);
    }
}

TEST_CASE("inverse map") {
    const auto u = ma_from_ar(ARCoefficients::from_values({0.5, 1.0 / 12, 1.0 / 24}));
    CHECK(u[1] == doctest::Approx(0.5));
    CHECK(u[2] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(u[3] == doctest::Approx(0.25).epsilon(1e-15));

    const auto d = ma_from_ar(ARCoefficients::from_values({0.7, 0, 0, 0}));
    for (std::size_t k = 1; k <= 4; ++k) CHECK(d[k] == doctest::Approx(std::pow(0.7, k)).epsilon(1e-15));

    const auto z = ma_from_ar(ARCoefficients::from_values({0, 0, 0}));
    for (std::size_t k = 1; k <= 3; ++k) CHECK(z[k] == 0.0);
}

TEST_CASE("recurrence agrees with plain series division") {
    for (const auto& spec : five_families()) {
        INFO(spec.describe());
        const auto u = moments(spec, 200);
        const auto a = ar_from_ma(u);
        const auto ref = oracle::ar_by_division(u.u);
        CHECK(a[1] == u[1]);
        for (std::size_t k = 1; k <= 200; ++k) CHECK(std::abs(a[k] - ref[k]) <= 1e-12);
    }
}

TEST_CASE("round trip and convolution identity") {
    for (const auto& spec : five_families()) {
        INFO(spec.describe());
        const auto u = moments(spec, 200);
        const auto a = ar_from_ma(u);
        const auto back = ma_from_ar(a);
        for (std::size_t k = 0; k <= 200; ++k) CHECK(std::abs(back[k] - u[k]) <= 1e-10);
        for (std::size_t k = 1; k < 200; ++k) {
            long double conv = a[k + 1];
            for (std::size_t r = 1; r <= k; ++r) conv += static_cast<long double>(a[r]) * u[k + 1 - r];
            CHECK(std::abs(static_cast<double>(conv) - u[k + 1]) <= 1e-10);
        }
        for (double s : a.partial_sums) CHECK(s < 1.0 + 1e-9);
    }
}

TEST_CASE("property: round trip on random Beta laws") {
    oracle::Gen g(5);
    for (int trial = 0; trial < 40; ++trial) {
        const double p = g.uniform(0.3, 8.0);
        const double q = g.uniform(0.3, 8.0);
        const auto u = beta_moments(p, q, 200);
        const auto back = ma_from_ar(ar_from_ma(u));
        for (std::size_t k = 0; k <= 200; ++k) CHECK(std::abs(back[k] - u[k]) <= 1e-10);
    }
}

TEST_CASE("persistence") {
    CHECK(persistence(DistributionSpec::beta(2, 3)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(persistence(DistributionSpec::polynomial({0, 6, -6})) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(persistence(DistributionSpec::uniform()) == 1.0);
    CHECK(persistence(DistributionSpec::beta(2, 0.8)) == 1.0);
    CHECK(persistence(DistributionSpec::polynomial({0, 2})) == 1.0);
    CHECK(persistence(DistributionSpec::dirac(0.3)) == 0.3);
    CHECK(persistence_method(DistributionSpec::beta(2, 3)) == "closed-form");
    CHECK(persistence_method(DistributionSpec::tabulated({0, 2, 0})) == "quadrature");
}

TEST_CASE("persistence equals 1 - 1/E[1/(1-phi)] on short-memory specs") {
    const std::vector<DistributionSpec> specs{DistributionSpec::beta(0.5, 1.5), DistributionSpec::beta(5, 3),
                                              DistributionSpec::polynomial({0, 6, -6}),
                                              DistributionSpec::polynomial({0, 12, -24, 12}),
                                              DistributionSpec::dirac(0.9), DistributionSpec::tabulated({0, 1, 2, 1, 0})};
    for (const auto& spec : specs) {
        INFO(spec.describe());
        const auto g = mean_inverse_gap(spec);
        REQUIRE(g.is_finite());
        CHECK(std::abs(persistence(spec) - (1.0 - 1.0 / g.value)) <= 1e-10);
    }
}

TEST_CASE("partial sums") {
    const auto d = partial_sum_trajectory(ar_from_ma(dirac_moments(0.5, 20)));
    for (double s : d) CHECK(s == doctest::Approx(0.5).epsilon(1e-15));

    const auto b = ar_from_ma(beta_moments(2, 3, 200));
    CHECK(std::abs(b.partial_sums[200] - 0.5) < 0.02);

    const auto u = partial_sum_trajectory(ar_from_ma(uniform_moments(1000)));
    REQUIRE(u.size() == 1000);
    for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i] > u[i - 1]);
    CHECK(u.back() > 0.7);
    CHECK(u.back() < 1.0);
}

TEST_CASE("Beta short-memory truncation gap shrinks with K") {
    for (double p : {0.5, 1.0, 2.0, 5.0}) {
        for (double q : {1.5, 2.0, 3.0}) {
            const auto a = ar_from_ma(beta_moments(p, q, 200));
            const double target = p / (p + q - 1);
            const double g50 = std::abs(a.partial_sums[50] - target);
            const double g100 = std::abs(a.partial_sums[100] - target);
            const double g200 = std::abs(a.partial_sums[200] - target);
            CHECK(g100 < g50);
            CHECK(g200 < g100);
        }
    }
}

TEST_CASE("uniform AR coefficients are positive") {
    const auto a = ar_from_ma(uniform_moments(200));
    for (std::size_t k = 1; k <= 200; ++k) CHECK(a[k] > 0.0);
}

TEST_CASE("generating function consistency") {
    for (const auto& spec : five_families()) {
        INFO(spec.describe());
        const std::size_t K = 400;
        const auto u = moments(spec, K + 1);
        const auto a = ar_from_ma(u);
        for (int i = 1; i <= 9; ++i) {
            const double r = 0.1 * i;
            if (u[K + 1] * std::pow(r, K + 1) / (1 - r) >= 1e-10) continue;
            double acc = 0.0;
            for (std::size_t k = K; k >= 1; --k) acc = (acc + a[k]) * r;
            const double m = m_real(spec, 1 - r);
            CHECK(std::abs(acc - m / (1 + m)) <= 1e-8);
        }
    }
}

TEST_CASE("disaggregation") {
    const auto uni = disaggregate_moments(0.5, 1.0 / 12, 1.0 / 24, 0.0);
    CHECK(uni.mean == 0.5);
    CHECK(uni.variance == doctest::Approx(1.0 / 3 - 0.25).epsilon(1e-15));

    const auto dir = disaggregate_moments(ar_from_ma(dirac_moments(0.5, 10)));
    CHECK(dir.mean == 0.5);
    CHECK(!dir.shape.has_value());
    CHECK_THROWS_AS((void)dir.require_shape(), DegenerateDistributionError);

    const auto b = disaggregate_moments(ar_from_ma(beta_moments(2, 3, 10)));
    CHECK(b.mean == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(b.variance == doctest::Approx(0.2 - 0.16).epsilon(1e-13));
    // skewness and kurtosis of Beta(2,3) from its raw moments
    const double m1 = oracle::beta_moment(2, 3, 1), m2 = oracle::beta_moment(2, 3, 2);
    const double m3 = oracle::beta_moment(2, 3, 3), m4 = oracle::beta_moment(2, 3, 4);
    const double var = m2 - m1 * m1;
    const double skew = (m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1) / std::pow(var, 1.5);
    const double kurt = (m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1) / (var * var);
    CHECK(b.require_shape().skewness == doctest::Approx(skew).epsilon(1e-10));
    CHECK(b.require_shape().kurtosis == doctest::Approx(kurt).epsilon(1e-10));
}

TEST_CASE("property: disaggregation recovers mean and variance of random Beta laws") {
    oracle::Gen g(9);
    for (int trial = 0; trial < 50; ++trial) {
        const double p = g.uniform(0.2, 10.0);
        const double q = g.uniform(0.2, 10.0);
        const auto d = disaggregate_moments(ar_from_ma(beta_moments(p, q, 4)));
        CHECK(d.mean == doctest::Approx(p / (p + q)).epsilon(1e-12));
        CHECK(d.variance == doctest::Approx(p * q / ((p + q) * (p + q) * (p + q + 1))).epsilon(1e-11));
    }
}

TEST_CASE("Cesaro weighted sums") {
    CHECK(cesaro_weighted(ar_from_ma(dirac_moments(0.5, 10)), 10) == doctest::Approx(0.05).epsilon(1e-15));
    const auto a = ar_from_ma(uniform_moments(1600));
    const double c1 = cesaro_weighted(a, 100), c2 = cesaro_weighted(a, 400), c3 = cesaro_weighted(a, 1600);
    CHECK(c1 > c2);
    CHECK(c2 > c3);
    CHECK(cesaro_weighted(ARCoefficients::from_values({0, 0, 0}), 3) == 0.0);
    CHECK_THROWS_AS((void)cesaro_weighted(a, 1601), DomainError);
}
