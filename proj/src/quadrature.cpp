#include "aggar/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "aggar/errors.hpp"

namespace aggar {
namespace {

template <unsigned N>
GaussRule build_rule() {
    using Boost = boost::math::quadrature::gauss<double, N>;
    // Boost stores the non-negative half of the symmetric rule.
    const auto& absc = Boost::abscissa();
    const auto& wts = Boost::weights();
    GaussRule rule;
    rule.nodes.reserve(N);
    rule.weights.reserve(N);
    for (std::size_t i = absc.size(); i-- > 0;) {
        if (absc[i] == 0.0) continue;
        rule.nodes.push_back(-absc[i]);
        rule.weights.push_back(wts[i]);
    }
    for (std::size_t i = 0; i < absc.size(); ++i) {
        rule.nodes.push_back(absc[i]);
        rule.weights.push_back(wts[i]);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(unsigned order) {
    static const GaussRule r8 = build_rule<8>();
    static const GaussRule r16 = build_rule<16>();
    static const GaussRule r32 = build_rule<32>();
    static const GaussRule r64 = build_rule<64>();
    static const GaussRule r128 = build_rule<128>();
    switch (order) {
        case 8: return r8;
        case 16: return r16;
        case 32: return r32;
        case 64: return r64;
        case 128: return r128;
        default: throw DomainError("unsupported Gauss-Legendre order " + std::to_string(order));
    }
}

}  // namespace aggar
