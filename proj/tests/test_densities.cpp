#include <doctest.h>

#include <cmath>
#include <vector>

#include "aggar/diagnostics.hpp"
#include "aggar/distribution.hpp"
#include "aggar/errors.hpp"
#include "aggar/moments.hpp"
#include "oracles.hpp"

using namespace aggar;

namespace {

std::vector<DistributionSpec> all_families() {
    return {DistributionSpec::beta(2, 3),
            DistributionSpec::beta(0.5, 0.8),
            DistributionSpec::uniform(),
            DistributionSpec::polynomial({0, 6, -6}),
            DistributionSpec::polynomial({0, 2}),
            DistributionSpec::dirac(0.5),
            DistributionSpec::dirac(0.0),
            DistributionSpec::generic([](double x) { return 6 * x * (1 - x); }),
            DistributionSpec::tabulated({0, 1, 2, 1, 0})};
}

}  // namespace

TEST_CASE("beta moments") {
    const auto u = beta_moments(1, 1, 3);
    CHECK(u.u == std::vector<double>{1, 0.5, 1.0 / 3, 0.25});
    CHECK(u.exactness == Exactness::closed_form);

    const auto b = beta_moments(2, 3, 2);
    const double o1 = oracle::simpson([](double x) { return x * 12 * x * (1 - x) * (1 - x); }, 0, 1, 2000);
    const double o2 = oracle::simpson([](double x) { return x * x * 12 * x * (1 - x) * (1 - x); }, 0, 1, 2000);
    CHECK(b[1] == doctest::Approx(o1).epsilon(1e-12));
    CHECK(b[2] == doctest::Approx(o2).epsilon(1e-12));
    CHECK(b[1] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(b[2] == doctest::Approx(0.2).epsilon(1e-15));

    // weight (1-x)^{-1/2}: substitute x = 1 - t^2, dx = 2t dt, B(1, 1/2) = 2
    const double o3 = oracle::simpson([](double t) { return (1 - t * t) * 2.0 / 2.0; }, 0, 1, 2000);
    CHECK(beta_moments(1, 0.5, 1)[1] == doctest::Approx(o3).epsilon(1e-12));

    CHECK_THROWS_AS((void)beta_moments(0, 1, 3), DomainError);
    CHECK_THROWS_AS((void)beta_moments(1, -2, 3), DomainError);
    CHECK_THROWS_AS((void)DistributionSpec::beta(-1, 2), ValidationError);
}

TEST_CASE("uniform moments") {
    CHECK(uniform_moments(1).u == std::vector<double>{1, 0.5});
    CHECK(uniform_moments(4).u == std::vector<double>{1, 0.5, 1.0 / 3, 0.25, 0.2});
    const auto a = uniform_moments(200);
    const auto b = beta_moments(1, 1, 200);
    for (std::size_t k = 0; k <= 200; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-15));
}

TEST_CASE("polynomial moments") {
    const auto u = poly_moments({1}, 2);
    CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u[2] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    const auto v = poly_moments({0, 6, -6}, 2);
    CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v[2] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK_THROWS_AS((void)poly_moments({0, 3}, 2), ValidationError);       // integrates to 1.5
    CHECK_NOTHROW((void)poly_moments({2, -2}, 2));
    CHECK_THROWS_AS((void)poly_moments({-1, 4}, 2), ValidationError);     // negative near 0
    CHECK_THROWS_AS((void)DistributionSpec::polynomial({}), ValidationError);
}

TEST_CASE("dirac moments") {
    CHECK(dirac_moments(0.5, 3).u == std::vector<double>{1, .5, .25, .125});
    CHECK(dirac_moments(0, 2).u == std::vector<double>{1, 0, 0});
    CHECK(dirac_moments(0.9, 1).u == std::vector<double>{1, 0.9});
    CHECK_THROWS_AS((void)dirac_moments(1.0, 2), DomainError);
    CHECK_THROWS_AS((void)DistributionSpec::dirac(1.0), ValidationError);
    CHECK_THROWS_AS((void)DistributionSpec::dirac(-0.1), ValidationError);
}

TEST_CASE("generic moments") {
    const auto one = DistributionSpec::generic([](double) { return 1.0; });
    const auto g = moments(one, 50);
    CHECK(g.exactness == Exactness::quadrature);
    for (std::size_t k = 0; k <= 50; ++k) CHECK(std::abs(g[k] - 1.0 / (k + 1)) <= 1e-12);

    const auto h = moments(DistributionSpec::generic([](double x) { return 6 * x * (1 - x); }), 50);
    const auto p = poly_moments({0, 6, -6}, 50);
    for (std::size_t k = 0; k <= 50; ++k) CHECK(std::abs(h[k] - p[k]) <= 1e-10);

    CHECK(moments(DistributionSpec::generic([](double x) { return 2 * x; }), 1)[1] ==
          doctest::Approx(2.0 / 3).epsilon(1e-13));

    CHECK_THROWS_AS((void)DistributionSpec::generic([](double) { return 2.0; }), ValidationError);
    CHECK_THROWS_AS((void)DistributionSpec::generic([](double x) { return 4 * x - 1; }), ValidationError);
}

TEST_CASE("tabulated density is piecewise linear") {
    const auto t = DistributionSpec::tabulated({0, 1, 2, 1, 0});
    CHECK(t.density(0.125) == doctest::Approx(0.5));
    CHECK(t.density(0.5) == doctest::Approx(2.0));
    // symmetric about 1/2, so u_1 = 1/2
    CHECK(moments(t, 1)[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS((void)DistributionSpec::tabulated({1}), ValidationError);
    CHECK_THROWS_AS((void)DistributionSpec::tabulated({1, -1, 3}), ValidationError);
}

TEST_CASE("mean inverse gap") {
    const auto b = mean_inverse_gap(DistributionSpec::beta(2, 3));
    REQUIRE(b.is_finite());
    CHECK(b.value == doctest::Approx(2.0).epsilon(1e-14));
    const double oracle_b = oracle::simpson([](double x) { return 12 * x * (1 - x); }, 0, 1, 2000);
    CHECK(b.value == doctest::Approx(oracle_b).epsilon(1e-12));

    const auto p = mean_inverse_gap(DistributionSpec::polynomial({0, 6, -6}));
    REQUIRE(p.is_finite());
    CHECK(p.value == doctest::Approx(3.0).epsilon(1e-14));

    CHECK(mean_inverse_gap(DistributionSpec::uniform()).is_infinite());
    CHECK(mean_inverse_gap(DistributionSpec::beta(2, 1)).is_infinite());
    CHECK(mean_inverse_gap(DistributionSpec::polynomial({0, 2})).is_infinite());
    CHECK(mean_inverse_gap(DistributionSpec::dirac(0.75)).value == doctest::Approx(4.0));

    // generic density 6x(1-x) through the probe
    const auto g = mean_inverse_gap(DistributionSpec::generic([](double x) { return 6 * x * (1 - x); }));
    REQUIRE(g.is_finite());
    CHECK(g.value == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(mean_inverse_gap(DistributionSpec::generic([](double) { return 1.0; })).is_infinite());
}

TEST_CASE("divergence probe stays indeterminate on slow convergence") {
    // (1-x)^0.2 density: E[1/(1-phi)] = 1.2/0.2 = 6, but the truncated
    // integrals converge too slowly for the probe to commit.
    std::vector<double> graded;
    for (int i = 1; i <= 30; ++i) graded.push_back(1 - std::ldexp(1.0, -i));
    const auto slow = DistributionSpec::generic([](double x) { return 1.2 * std::pow(1 - x, 0.2); }, graded);
    CHECK(mean_inverse_gap(slow).is_indeterminate());
    CHECK_THROWS_AS((void)memory_class(slow), IndeterminateError);

    // (1-x)^0.5: 1.5/0.5 = 3, fast enough to commit
    const auto fast = DistributionSpec::generic([](double x) { return 1.5 * std::sqrt(1 - x); }, graded);
    const auto v = mean_inverse_gap(fast);
    REQUIRE(v.is_finite());
    CHECK(v.value == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("memory class") {
    CHECK(memory_class(DistributionSpec::beta(2, 0.8)) == MemoryClass::long_memory);
    CHECK(memory_class(DistributionSpec::polynomial({0, 6, -6})) == MemoryClass::short_memory);
    CHECK(memory_class(DistributionSpec::dirac(0.99)) == MemoryClass::short_memory);
    CHECK(memory_class(DistributionSpec::uniform()) == MemoryClass::long_memory);
    for (double p : {0.5, 1.0, 2.0, 5.0}) {
        for (double q : {0.5, 1.0, 1.5, 3.0}) {
            const auto mc = memory_class(DistributionSpec::beta(p, q));
            CHECK((mc == MemoryClass::short_memory) == (q > 1.0));
        }
    }
}

TEST_CASE("diagonal sum matches the quadrature route for f(1) = 0") {
    oracle::Gen g(11);
    for (int trial = 0; trial < 40; ++trial) {
        // Bernstein weights with the last one zero give f(1) = 0
        std::vector<double> w(2 + g.index(8));
        double total = 0.0;
        for (std::size_t j = 0; j + 1 < w.size(); ++j) total += (w[j] = g.uniform());
        for (auto& x : w) x /= total;
        const auto c = oracle::bernstein_to_monomial(w);
        const double direct = oracle::simpson(
            [&](double x) {
                double f = 0.0;
                for (std::size_t s = c.size(); s-- > 0;) f = f * x + c[s];
                return x < 1 ? f / (1 - x) : 0.0;
            },
            0, 1 - 1e-7, 200000);
        CHECK(polynomial_diagonal_sum(c) == doctest::Approx(direct).epsilon(1e-5));
    }
}

TEST_CASE("warnings flag square-summability failure") {
    CHECK(!DistributionSpec::beta(2, 0.4).warnings().empty());
    CHECK(DistributionSpec::beta(2, 0.6).warnings().empty());
}

TEST_CASE("moment sequences are monotone and completely monotone") {
    for (const auto& spec : all_families()) {
        INFO(spec.describe());
        const auto u = moments(spec, 200);
        CHECK(u[0] == 1.0);
        for (std::size_t k = 1; k <= 200; ++k) {
            CHECK(u[k] <= u[k - 1]);
            CHECK(u[k] >= 0.0);
        }
        CHECK(hausdorff_check(u, 20).passed);
    }
}

TEST_CASE("property: random Beta and Bernstein-polynomial laws") {
    oracle::Gen g(3);
    for (int trial = 0; trial < 60; ++trial) {
        const double p = g.uniform(0.3, 6.0);
        const double q = g.uniform(0.3, 6.0);
        const auto u = beta_moments(p, q, 60);
        for (std::size_t k = 1; k <= 60; ++k) {
            CHECK(u[k] <= u[k - 1]);
            CHECK(u[k] == doctest::Approx(oracle::beta_moment(p, q, static_cast<int>(k))).epsilon(1e-12));
        }
        CHECK(hausdorff_check(u, 20).passed);
    }
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> w(1 + g.index(10));
        double total = 0.0;
        for (auto& x : w) total += (x = g.uniform());
        for (auto& x : w) x /= total;
        const auto c = oracle::bernstein_to_monomial(w);
        const auto spec = DistributionSpec::polynomial(c);
        const auto closed = moments(spec, 50);
        const auto quad = moments(DistributionSpec::generic([&](double x) { return spec.density(x); }), 50);
        for (std::size_t k = 0; k <= 50; ++k) CHECK(std::abs(closed[k] - quad[k]) <= 1e-9);
        CHECK(hausdorff_check(closed, 20).passed);
    }
}

TEST_CASE("externally supplied moments are validated") {
    CHECK_NOTHROW((void)moment_sequence_from_values({1, 0.5, 0.25}));
    CHECK_THROWS_AS((void)moment_sequence_from_values({0.9, 0.5}), ValidationError);
    CHECK_THROWS_AS((void)moment_sequence_from_values({1, 0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS((void)moment_sequence_from_values({1, 0.5, -0.1}), ValidationError);
    CHECK_THROWS_AS((void)moment_sequence_from_values({1, NAN}), ValidationError);
}
