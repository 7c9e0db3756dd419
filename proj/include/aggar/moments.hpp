#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "aggar/distribution.hpp"

namespace aggar {

enum class Exactness { closed_form, quadrature };

[[nodiscard]] std::string_view to_string(Exactness e);

/// Noncentral moments u_k = E[phi^k], k = 0..K, with u[0] = 1.
struct MomentSequence {
    std::vector<double> u;
    Exactness exactness = Exactness::closed_form;
    /// Largest |refined - coarse| difference seen by the quadrature; 0 for closed forms.
    double quadrature_error = 0.0;

    [[nodiscard]] std::size_t order() const { return u.empty() ? 0 : u.size() - 1; }
    [[nodiscard]] double operator[](std::size_t k) const { return u[k]; }
};

/// u_k = prod_{j<k} (p + j) / (p + q + j). No quadrature.
[[nodiscard]] MomentSequence beta_moments(double p, double q, std::size_t K);

/// u_k = 1 / (k + 1).
[[nodiscard]] MomentSequence uniform_moments(std::size_t K);

/// u_k = sum_s c_s / (s + k + 1). The coefficients are validated as a density first.
[[nodiscard]] MomentSequence poly_moments(const std::vector<double>& coeffs, std::size_t K);

/// u_k = phi0^k.
[[nodiscard]] MomentSequence dirac_moments(double phi0, std::size_t K);

/// Gauss-Legendre order 128 per breakpoint panel, with one halving refinement
/// for the error estimate. Throws NumericalIntegrityError when the result
/// breaks monotonicity by more than 1e-9.
[[nodiscard]] MomentSequence generic_moments(const GenericLaw& law, std::size_t K);

/// Dispatch on the family.
[[nodiscard]] MomentSequence moments(const DistributionSpec& spec, std::size_t K);

/// Wrap externally supplied values (u[0] must be 1). Checks 1 = u0 >= u1 >= ... >= 0
/// and throws ValidationError naming the first violation.
[[nodiscard]] MomentSequence moment_sequence_from_values(std::vector<double> u);

/// A real number, +infinity, or an unresolved numerical status.
struct ExtendedReal {
    enum class Kind { finite, infinite, indeterminate };
    Kind kind = Kind::indeterminate;
    double value = std::numeric_limits<double>::quiet_NaN();

    static ExtendedReal finite(double v) { return {Kind::finite, v}; }
    static ExtendedReal infinity() { return {Kind::infinite, std::numeric_limits<double>::infinity()}; }
    static ExtendedReal indeterminate() { return {}; }

    [[nodiscard]] bool is_finite() const { return kind == Kind::finite; }
    [[nodiscard]] bool is_infinite() const { return kind == Kind::infinite; }
    [[nodiscard]] bool is_indeterminate() const { return kind == Kind::indeterminate; }
};

/// Truncation study of int g(x) f(x) / (1 - x) dx for a generic density: the
/// integral cut at 1 - 2^-j for j = 10..30 and the resulting verdict.
struct DivergenceProbe {
    std::vector<int> levels;
    std::vector<double> truncated;  // integral up to 1 - 2^-j, one per level
    double growth = 0.0;            // increment at j=30 over increment at j=25
    ExtendedReal result;
};

/// Increments that shrink by less than this factor over five halvings mean divergence.
inline constexpr double kDivergenceGrowthFactor = 1.5;
/// Increments that shrink at least this much over five halvings mean convergence.
inline constexpr double kConvergenceShrinkFactor = 4.0;

[[nodiscard]] DivergenceProbe probe_inverse_gap(const GenericLaw& law,
                                                const std::function<double(double)>& weight);

/// E[1 / (1 - phi)], closed form where available.
[[nodiscard]] ExtendedReal mean_inverse_gap(const DistributionSpec& spec);

enum class MemoryClass { short_memory, long_memory };

[[nodiscard]] std::string_view to_string(MemoryClass m);

/// LongMemory iff E[1/(1-phi)] = +inf. Throws IndeterminateError when a
/// generic density cannot be resolved.
[[nodiscard]] MemoryClass memory_class(const DistributionSpec& spec);

/// S1 = c0 + (c0+c1)/2 + ... + (c0+...+cd)/(d+1).
[[nodiscard]] double polynomial_diagonal_sum(const std::vector<double>& coeffs);

}  // namespace aggar
