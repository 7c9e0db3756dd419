#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "aggar/csv_io.hpp"
#include "aggar/errors.hpp"
#include "aggar/json_io.hpp"
#include "oracles.hpp"

using namespace aggar;
using namespace aggar::io;

TEST_CASE("numbers round-trip through text") {
    oracle::Gen g(31);
    for (int i = 0; i < 5000; ++i) {
        const double x = std::ldexp(g.uniform(-1, 1), static_cast<int>(g.index(600)) - 300);
        CHECK(parse_number(format_number(x)) == x);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(parse_number(format_number(std::numeric_limits<double>::denorm_min())) ==
          std::numeric_limits<double>::denorm_min());
    CHECK_THROWS_AS((void)parse_number("1.5x"), ValidationError);
    CHECK_THROWS_AS((void)parse_number(""), ValidationError);
    CHECK_THROWS_AS((void)parse_number("abc"), ValidationError);
}

TEST_CASE("moments CSV round-trip") {
    const auto u = beta_moments(2, 3, 50);
    std::stringstream ss;
    write_header_comment(ss, R"({"command":"moments"})");
    write_moments_csv(ss, u);
    const auto back = read_moments_csv(ss);
    REQUIRE(back.header_json.has_value());
    CHECK(*back.header_json == R"({"command":"moments"})");
    CHECK(back.moments.u == u.u);
}

TEST_CASE("moments CSV rejects malformed or corrupted input") {
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return read_moments_csv(is);
    };
    CHECK_NOTHROW((void)parse("k,u_k\n1,0.5\n2,0.25\n"));
    CHECK_THROWS_AS((void)parse("k,a_k\n1,0.5\n"), ValidationError);
    CHECK_THROWS_AS((void)parse("1,0.5\n"), ValidationError);
    CHECK_THROWS_AS((void)parse("k,u_k\n2,0.5\n"), ValidationError);
    CHECK_THROWS_AS((void)parse("k,u_k\n1,0.5\n2,0.6\n"), ValidationError);
    CHECK_THROWS_AS((void)parse("k,u_k\n1,1.5\n"), ValidationError);
    CHECK_THROWS_AS((void)parse("k,u_k\n1,0.5\n2,-0.1\n"), ValidationError);
    CHECK_THROWS_AS((void)parse("k,u_k\n1,zero\n"), ValidationError);
    CHECK_THROWS_AS((void)parse(""), ValidationError);
}

TEST_CASE("CSV writers") {
    std::ostringstream a;
    write_ar_csv(a, ARCoefficients::from_values({0.5, 0.25}));
    CHECK(a.str() == "k,a_k,S_k\n1,0.5,0.5\n2,0.25,0.75\n");
    std::ostringstream p;
    write_path_csv(p, std::vector<double>{1.5, -2.0});
    CHECK(p.str() == "t,X\n1,1.5\n2,-2\n");
    std::ostringstream t;
    write_abel_csv(t, {{4, 0.9375, 0.5, 1.0}});
    CHECK(t.str() == "j,r_j,a_r\n4,0.9375,0.5\n");
    std::ostringstream gr;
    write_grid_csv(gr, {{cplx(0.5, 0), cplx(1, 2), cplx(3, 4)}});
    CHECK(gr.str() == "re_z,im_z,re_m,im_m,re_a,im_a\n0.5,0,1,2,3,4\n");
}

TEST_CASE("spec JSON round-trip") {
    const std::vector<DistributionSpec> specs{DistributionSpec::beta(2, 3), DistributionSpec::uniform(),
                                              DistributionSpec::polynomial({0, 6, -6}), DistributionSpec::dirac(0.5),
                                              DistributionSpec::tabulated({0, 1, 2, 1, 0})};
    for (const auto& spec : specs) {
        const json j = spec_to_json(spec);
        const auto back = spec_from_json(j);
        CHECK(spec_to_json(back) == j);
        CHECK(back.describe() == spec.describe());
    }
    CHECK(spec_to_json(DistributionSpec::beta(2, 3)) == json::parse(R"({"family":"beta","p":2.0,"q":3.0})"));
    CHECK(spec_to_json(DistributionSpec::polynomial({0, 6, -6})) ==
          json::parse(R"({"family":"polynomial","c":[0,6,-6]})"));
}

TEST_CASE("spec JSON validation") {
    CHECK_THROWS_AS((void)spec_from_json(json::parse(R"({"family":"gamma"})")), ValidationError);
    CHECK_THROWS_AS((void)spec_from_json(json::parse(R"({"family":"beta","p":2})")), ValidationError);
    CHECK_THROWS_AS((void)spec_from_json(json::parse(R"({"family":"beta","p":-2,"q":1})")), ValidationError);
    CHECK_THROWS_AS((void)spec_from_json(json::parse(R"({"family":"polynomial","c":["a"]})")), ValidationError);
    CHECK_THROWS_AS((void)spec_from_json(json::parse(R"([1,2])")), ValidationError);
    const auto callable = spec_to_json(DistributionSpec::generic([](double) { return 1.0; }));
    CHECK(callable["tabulated"] == false);
    CHECK_THROWS_AS((void)spec_from_json(callable), ValidationError);
}

TEST_CASE("persistence JSON") {
    const json j = persistence_json(DistributionSpec::beta(2, 3));
    CHECK(j["a1_limit"] == 0.5);
    CHECK(j["memory_class"] == "ShortMemory");
    CHECK(j["method"] == "closed-form");
    CHECK(j["spec"]["family"] == "beta");
}
