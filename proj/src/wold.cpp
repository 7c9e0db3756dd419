#include "aggar/wold.hpp"

#include <cmath>
#include <string>

#include "aggar/errors.hpp"
#include "aggar/summation.hpp"
#include "overloaded.hpp"

namespace aggar {
namespace {

std::vector<double> running_sums(const std::vector<double>& a) {
    std::vector<double> s(a.size(), 0.0);
    CompensatedSum acc;
    for (std::size_t k = 1; k < a.size(); ++k) {
        acc.add(a[k]);
        s[k] = acc.value();
    }
    return s;
}

}  // namespace

ARCoefficients ARCoefficients::from_values(const std::vector<double>& a1_to_K) {
    ARCoefficients out;
    out.a.reserve(a1_to_K.size() + 1);
    out.a.push_back(0.0);
    out.a.insert(out.a.end(), a1_to_K.begin(), a1_to_K.end());
    out.partial_sums = running_sums(out.a);
    return out;
}

ARCoefficients ar_from_ma(const MomentSequence& u) {
    const std::size_t K = u.order();
    if (K < 1) throw DomainError("ar_from_ma: need at least u_1");
    ARCoefficients out;
    out.a.assign(K + 1, 0.0);
    out.a[1] = u[1];
    for (std::size_t k = 1; k < K; ++k) {
        CompensatedDot conv;
        for (std::size_t r = 1; r <= k; ++r) conv.add(out.a[r], u[k + 1 - r]);
        out.a[k + 1] = u[k + 1] - conv.value();
    }
    out.partial_sums = running_sums(out.a);
    out.source = u;
    return out;
}

MomentSequence ma_from_ar(const ARCoefficients& a) {
    const std::size_t K = a.order();
    MomentSequence m;
    m.exactness = a.source ? a.source->exactness : Exactness::closed_form;
    m.u.assign(K + 1, 0.0);
    m.u[0] = 1.0;
    if (K == 0) return m;
    m.u[1] = a[1];
    for (std::size_t k = 1; k < K; ++k) {
        CompensatedDot conv;
        for (std::size_t r = 1; r <= k; ++r) conv.add(a[r], m.u[k + 1 - r]);
        m.u[k + 1] = a[k + 1] + conv.value();
    }
    return m;
}

double persistence(const DistributionSpec& spec) {
    return std::visit(
        detail::Overloaded{
            [](const BetaLaw& b) { return b.q > 1.0 ? b.p / (b.p + b.q - 1.0) : 1.0; },
            [](const UniformLaw&) { return 1.0; },
            [](const PolynomialLaw& p) {
                if (polynomial_at_one(p.coeffs) > kPolynomialEndpointZeroTol) return 1.0;
                return 1.0 - 1.0 / polynomial_diagonal_sum(p.coeffs);
            },
            [](const DiracLaw& d) { return d.phi0; },
            [&spec](const GenericLaw&) {
                const ExtendedReal gap = mean_inverse_gap(spec);
                if (gap.is_indeterminate()) {
                    throw IndeterminateError("persistence of " + spec.describe() +
                                             " is indeterminate: E[1/(1-phi)] unresolved");
                }
                return gap.is_infinite() ? 1.0 : 1.0 - 1.0 / gap.value;
            },
        },
        spec.law());
}

std::string_view persistence_method(const DistributionSpec& spec) {
    return spec.family() == Family::generic ? "quadrature" : "closed-form";
}

std::vector<double> partial_sum_trajectory(const ARCoefficients& a) {
    if (a.partial_sums.size() < 2) return {};
    return {a.partial_sums.begin() + 1, a.partial_sums.end()};
}

const ShapeMoments& CrossSectionMoments::require_shape() const {
    if (!shape) {
        throw DegenerateDistributionError(
            "skewness and kurtosis are undefined: a_2 (the variance of phi) is not positive");
    }
    return *shape;
}

CrossSectionMoments disaggregate_moments(double a1, double a2, double a3, double a4) {
    CrossSectionMoments out{a1, a2, std::nullopt};
    if (a2 > 0.0) {
        const double skew = (a3 - a1 * a2) / std::pow(a2, 1.5);
        const double kurt = (a4 - 2.0 * a1 * a3 + a1 * a1 * a2 + a2 * a2) / (a2 * a2);
        out.shape = ShapeMoments{skew, kurt};
    }
    return out;
}

CrossSectionMoments disaggregate_moments(const ARCoefficients& a) {
    if (a.order() < 4) throw DomainError("disaggregate_moments: need a_1..a_4");
    return disaggregate_moments(a[1], a[2], a[3], a[4]);
}

double cesaro_weighted(const ARCoefficients& a, std::size_t n) {
    if (n == 0 || n > a.order()) {
        throw DomainError("cesaro_weighted: n must lie in 1.." + std::to_string(a.order()));
    }
    CompensatedSum acc;
    for (std::size_t k = 1; k <= n; ++k) acc.add(static_cast<double>(k) * std::abs(a[k]));
    return acc.value() / static_cast<double>(n);
}

}  // namespace aggar
