#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "aggar/distribution.hpp"
#include "aggar/moments.hpp"

namespace aggar {

/// Autoregressive coefficients of the limit aggregate, a_1..a_K.
/// Stored with a leading placeholder, a[k] is a_k; a[0] = 0 and
/// partial_sums[0] = 0.
struct ARCoefficients {
    std::vector<double> a;
    std::vector<double> partial_sums;
    /// Moments the coefficients were derived from; empty when built from raw values.
    std::optional<MomentSequence> source;

    [[nodiscard]] std::size_t order() const { return a.empty() ? 0 : a.size() - 1; }
    [[nodiscard]] double operator[](std::size_t k) const { return a[k]; }

    /// From a_1..a_K (no leading placeholder).
    static ARCoefficients from_values(const std::vector<double>& a1_to_K);
};

/// a_1 = u_1, a_{k+1} = u_{k+1} - sum_{r=1}^{k} a_r u_{k+1-r}. O(K^2); the inner
/// convolution is accumulated in doubled precision.
[[nodiscard]] ARCoefficients ar_from_ma(const MomentSequence& u);

/// Inverse map: u_1 = a_1, u_{k+1} = a_{k+1} + sum_{r=1}^{k} a_r u_{k+1-r}.
/// The result is not re-validated as a moment sequence.
[[nodiscard]] MomentSequence ma_from_ar(const ARCoefficients& a);

/// a(1) = sum_k a_k, in (0, 1]. Closed form per family; generic densities go
/// through 1 - 1/E[1/(1-phi)]. Throws IndeterminateError when that is unresolved.
[[nodiscard]] double persistence(const DistributionSpec& spec);

/// "closed-form" or "quadrature", matching how persistence() got its value.
[[nodiscard]] std::string_view persistence_method(const DistributionSpec& spec);

/// S_K for K = 1..order().
[[nodiscard]] std::vector<double> partial_sum_trajectory(const ARCoefficients& a);

/// Skewness and kurtosis of phi, only defined when the variance is positive.
struct ShapeMoments {
    double skewness;
    double kurtosis;
};

struct CrossSectionMoments {
    double mean;
    double variance;
    std::optional<ShapeMoments> shape;

    /// Throws DegenerateDistributionError when a_2 <= 0.
    [[nodiscard]] const ShapeMoments& require_shape() const;
};

/// E[phi] = a1, V[phi] = a2, S = (a3 - a1 a2) / a2^{3/2},
/// K = (a4 - 2 a1 a3 + a1^2 a2 + a2^2) / a2^2.
[[nodiscard]] CrossSectionMoments disaggregate_moments(double a1, double a2, double a3, double a4);
[[nodiscard]] CrossSectionMoments disaggregate_moments(const ARCoefficients& a);

/// (1/n) sum_{k=1}^{n} k |a_k|.
[[nodiscard]] double cesaro_weighted(const ARCoefficients& a, std::size_t n);

}  // namespace aggar
