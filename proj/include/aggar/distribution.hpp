#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aggar {

/// Beta(p, q) law on [0, 1).
struct BetaLaw {
    double p;
    double q;
};

struct UniformLaw {};

/// Density f(x) = sum_s c_s x^s on [0, 1].
struct PolynomialLaw {
    std::vector<double> coeffs;
};

/// Point mass at phi0.
struct DiracLaw {
    double phi0;
};

/// Bounded density given as a callable. `breakpoints` are interior points
/// where the density may have kinks; quadrature panels are split there.
/// `table` is kept when the density was built from equispaced samples so the
/// law can be written back out.
struct GenericLaw {
    std::function<double(double)> density;
    std::vector<double> breakpoints;
    std::vector<double> table;
};

enum class Family { beta, uniform, polynomial, dirac, generic };

[[nodiscard]] std::string_view to_string(Family f);

/// A validated mixing law for the AR(1) coefficient on [0, 1). Construct
/// through the named factories; each one checks the family's invariants and
/// throws ValidationError naming the violated one.
class DistributionSpec {
public:
    using Law = std::variant<BetaLaw, UniformLaw, PolynomialLaw, DiracLaw, GenericLaw>;

    static DistributionSpec beta(double p, double q);
    static DistributionSpec uniform();
    static DistributionSpec polynomial(std::vector<double> coeffs);
    static DistributionSpec dirac(double phi0);
    static DistributionSpec generic(std::function<double(double)> density,
                                    std::vector<double> breakpoints = {});
    /// Piecewise-linear density through `values` at x_i = i / (n - 1).
    static DistributionSpec tabulated(std::vector<double> values);

    [[nodiscard]] const Law& law() const { return law_; }
    [[nodiscard]] Family family() const;
    [[nodiscard]] bool has_density() const { return family() != Family::dirac; }

    /// Density at x in [0, 1]; not available for Dirac.
    [[nodiscard]] double density(double x) const;

    /// Short human-readable form, e.g. "Beta(2, 3)".
    [[nodiscard]] std::string describe() const;

    /// Non-fatal remarks (e.g. Beta with q <= 1/2 has non-square-summable moments).
    [[nodiscard]] std::vector<std::string> warnings() const;

private:
    explicit DistributionSpec(Law law) : law_(std::move(law)) {}
    Law law_;
};

/// Horner evaluation of sum_s c_s x^s.
[[nodiscard]] double polynomial_value(const std::vector<double>& coeffs, double x);

/// f(1) = sum_s c_s.
[[nodiscard]] double polynomial_at_one(const std::vector<double>& coeffs);

/// [0, sorted interior breakpoints..., 1].
[[nodiscard]] std::vector<double> panel_edges(const GenericLaw& law);

/// Composite Gauss-Legendre integral of g(x) * density(x) over [0, 1], one
/// panel per breakpoint interval.
[[nodiscard]] double integrate_against_density(const GenericLaw& law,
                                               const std::function<double(double)>& g,
                                               unsigned order = 128);

/// |f(1)| at or below this counts as f(1) = 0.
inline constexpr double kPolynomialEndpointZeroTol = 1e-10;

}  // namespace aggar
