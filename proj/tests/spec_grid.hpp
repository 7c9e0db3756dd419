#pragma once

#include <vector>

#include "aggar/distribution.hpp"

namespace fixture {

/// Specs across all five families, both memory classes.
inline std::vector<aggar::DistributionSpec> verdict_grid() {
    using aggar::DistributionSpec;
    std::vector<DistributionSpec> out;
    for (double p : {0.5, 2.0, 5.0}) {
        for (double q : {0.5, 0.8, 1.0, 1.5, 3.0}) out.push_back(DistributionSpec::beta(p, q));
    }
    out.push_back(DistributionSpec::uniform());
    out.push_back(DistributionSpec::polynomial({0, 6, -6}));
    out.push_back(DistributionSpec::polynomial({0, 2}));
    out.push_back(DistributionSpec::polynomial({2, -2}));
    out.push_back(DistributionSpec::polynomial({0, 0, 3}));
    out.push_back(DistributionSpec::polynomial({0, 12, -24, 12}));
    out.push_back(DistributionSpec::polynomial({1.5, 0, -1.5}));
    for (double phi : {0.0, 0.3, 0.9, 0.99}) out.push_back(DistributionSpec::dirac(phi));
    out.push_back(DistributionSpec::tabulated({0, 1, 2, 1, 0}));
    out.push_back(DistributionSpec::tabulated({0.5, 1, 1.5}));
    out.push_back(DistributionSpec::generic([](double x) { return 30 * x * x * (1 - x) * (1 - x); }));
    return out;
}

}  // namespace fixture
