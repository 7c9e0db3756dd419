#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "aggar/distribution.hpp"
#include "aggar/errors.hpp"
#include "aggar/moments.hpp"

namespace aggar {

using cplx = std::complex<double>;

/// A point of the closed unit disc other than z = 1.
class DiscPoint {
public:
    /// Throws DomainError when |z| > 1 or z = 1.
    explicit DiscPoint(cplx z);
    DiscPoint(double re, double im) : DiscPoint(cplx(re, im)) {}

    [[nodiscard]] cplx z() const { return z_; }
    [[nodiscard]] double modulus() const { return std::abs(z_); }
    [[nodiscard]] bool on_boundary() const;

private:
    cplx z_;
};

/// |z| up to 1 + this counts as the closed disc.
inline constexpr double kDiscSlack = 1e-14;

enum class EvalMethod { series, integral, closed_form };

[[nodiscard]] std::string_view to_string(EvalMethod m);

struct SeriesValue {
    cplx value;
    EvalMethod method = EvalMethod::series;
    /// Bound on the truncated tail; 0 for integral and closed-form values.
    double remainder_bound = 0.0;
};

/// sum_{k=1}^{K} u_k z^k. Only inside the open disc; the tail bound uses u_K
/// in place of u_{K+1}, which can only enlarge it.
[[nodiscard]] SeriesValue m_series(const MomentSequence& u, const DiscPoint& z);

/// m(z) = int zx / (1 - zx) dmu(x). Dirac, Uniform and Polynomial use closed
/// forms; Beta and generic densities use graded quadrature. Beta with q < 1
/// on the unit circle throws UnsupportedEvaluationError.
[[nodiscard]] SeriesValue m_integral(const DistributionSpec& spec, const DiscPoint& z);

/// a(z) = m(z) / (1 + m(z)).
[[nodiscard]] SeriesValue a_of_z(const DistributionSpec& spec, const DiscPoint& z);

/// Real-axis evaluation at r in [0, 1), r = 1 - gap with the gap passed
/// separately.
[[nodiscard]] double m_real(const DistributionSpec& spec, double gap);

struct AbelRow {
    int j;
    double r;
    double a;
    double m;
};

struct AbelResult {
    double estimate = 0.0;
    /// Aitken acceleration applied (short memory only).
    bool accelerated = false;
    MemoryClass memory = MemoryClass::short_memory;
    std::vector<AbelRow> table;
};

/// The raw a(r_j) table failed its tail checks; the table travels with the error.
class ExtrapolationError : public NumericalIntegrityError {
public:
    ExtrapolationError(const std::string& what, std::vector<AbelRow> table)
        : NumericalIntegrityError(what), table_(std::move(table)) {}
    [[nodiscard]] const std::vector<AbelRow>& table() const { return table_; }

private:
    std::vector<AbelRow> table_;
};

inline constexpr int kAbelFirstLevel = 4;
inline constexpr int kAbelLastLevel = 24;

/// a(r_j) and m(r_j) at r_j = 1 - 2^-j, j = 4..24.
[[nodiscard]] std::vector<AbelRow> abel_table(const DistributionSpec& spec);

/// Limit estimate from a table. Short memory: Aitken delta-squared on the last
/// three rows. Long memory: the last raw value. Throws ExtrapolationError when
/// the tail is not monotone or its increments do not shrink.
[[nodiscard]] AbelResult extrapolate_abel(std::vector<AbelRow> table, MemoryClass memory);

/// lim_{r -> 1-} a(r). Throws IndeterminateError for unresolved generic specs.
[[nodiscard]] AbelResult abel_limit(const DistributionSpec& spec);

/// Polar grid r_i x 2 pi k / n_angles.
struct DiscGrid {
    std::vector<double> radii;
    std::size_t n_angles = 720;

    /// radii {0.25, 0.5, 0.75, 0.95, 0.999}, 720 angles.
    static DiscGrid standard();
    [[nodiscard]] std::vector<cplx> points() const;
};

struct PositivityResult {
    double min_value = 0.0;
    cplx argmin{};
    std::size_t n_points = 0;
    [[nodiscard]] bool passed() const { return min_value > 0.0; }
};

/// Minimum of Re(1 + m(z)) over the grid.
[[nodiscard]] PositivityResult re_positivity_check(const DistributionSpec& spec, const DiscGrid& grid);

struct InjectivityViolation {
    std::string check;
    double t;
    double value;
};

struct InjectivityReport {
    double r = 0.0;
    std::size_t n_angles = 0;
    bool monotone_real = true;
    bool antisymmetric = true;
    bool positive_imag = true;
    /// m vanishes identically (Dirac(0)); the checks hold vacuously.
    bool vacuous = false;
    double max_antisymmetry_error = 0.0;
    std::vector<InjectivityViolation> violations;

    [[nodiscard]] bool passed() const { return monotone_real && antisymmetric && positive_imag; }
};

inline constexpr double kAntisymmetryTol = 1e-10;

/// On t_j = pi j / n, j = 1..n-1: Re m(r e^{it}) strictly decreasing,
/// Im m(r e^{it}) = -Im m(r e^{i(2 pi - t)}), Im m(r e^{it}) > 0.
[[nodiscard]] InjectivityReport circle_injectivity_check(const DistributionSpec& spec, double r,
                                                         std::size_t n_angles = 1000);

struct GridSample {
    cplx z;
    cplx m;
    cplx a;
};

/// m and a over every grid point, in grid order.
[[nodiscard]] std::vector<GridSample> grid_sweep(const DistributionSpec& spec, const DiscGrid& grid);

}  // namespace aggar
