#include "aggar/complexfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "aggar/quadrature.hpp"
#include "aggar/summation.hpp"
#include "overloaded.hpp"

namespace aggar {
namespace {

using detail::Overloaded;

constexpr double kSeriesRadius = 0.5;
constexpr std::size_t kMaxClosedFormDegree = 20;
constexpr double kTinyTerm = 1e-18;

// sum_{k>=1} z^k / (k + 1 + s) for |z| <= 1/2, i.e. the moments of x^s on [0,1].
cplx shifted_log_series(cplx z, std::size_t s) {
    cplx acc{};
    cplx zk = z;
    for (std::size_t k = 1; k < 200; ++k) {
        const cplx term = zk / static_cast<double>(k + 1 + s);
        acc += term;
        if (std::abs(term) < kTinyTerm) break;
        zk *= z;
    }
    return acc;
}

double beta_log_norm(const BetaLaw& b) { return std::lgamma(b.p + b.q) - std::lgamma(b.p) - std::lgamma(b.q); }

// m(z) with w = 1 - z supplied separately; the denominator 1 - zx is formed as
// (1 - x) + w x.
cplx m_from_gap(const DistributionSpec& spec, cplx z, cplx w, bool boundary, EvalMethod& method) {
    return std::visit(
        Overloaded{
            [&](const DiracLaw& d) {
                method = EvalMethod::closed_form;
                return z * d.phi0 / ((1.0 - d.phi0) + w * d.phi0);
            },
            [&](const UniformLaw&) {
                method = EvalMethod::closed_form;
                if (std::abs(z) < kSeriesRadius) return shifted_log_series(z, 0);
                return -std::log(w) / z - 1.0;
            },
            [&](const PolynomialLaw& p) -> cplx {
                if (std::abs(z) < kSeriesRadius) {
                    method = EvalMethod::closed_form;
                    cplx acc{};
                    for (std::size_t s = 0; s < p.coeffs.size(); ++s) {
                        if (p.coeffs[s] != 0.0) acc += p.coeffs[s] * shifted_log_series(z, s);
                    }
                    return acc;
                }
                if (p.coeffs.size() <= kMaxClosedFormDegree + 1) {
                    // J_s = int x^s / (1 - zx) dx, J_0 = -log(1 - z)/z,
                    // J_s = (J_{s-1} - 1/s)/z; m = sum c_s J_s - 1.
                    method = EvalMethod::closed_form;
                    cplx J = -std::log(w) / z;
                    cplx acc = p.coeffs[0] * J;
                    for (std::size_t s = 1; s < p.coeffs.size(); ++s) {
                        J = (J - 1.0 / static_cast<double>(s)) / z;
                        acc += p.coeffs[s] * J;
                    }
                    return acc - 1.0;
                }
                method = EvalMethod::integral;
                GradedOptions opt;
                return integrate_graded(
                    [&](double x, double s) { return z * x * polynomial_value(p.coeffs, x) / (s + w * x); },
                    opt);
            },
            [&](const BetaLaw& b) -> cplx {
                if (boundary && b.q < 1.0) {
                    throw UnsupportedEvaluationError(
                        "m(z) on the unit circle is not available for Beta with q < 1 "
                        "(density singularity at 1 meets the vanishing denominator)");
                }
                method = EvalMethod::integral;
                const double ln = beta_log_norm(b);
                GradedOptions opt;
                opt.exponents = {b.p, b.q - 1.0};
                return integrate_graded(
                    [&](double x, double s) {
                        const double f = std::exp(ln + (b.p - 1.0) * std::log(x) + (b.q - 1.0) * std::log(s));
                        return z * x * f / (s + w * x);
                    },
                    opt);
            },
            [&](const GenericLaw& g) -> cplx {
                method = EvalMethod::integral;
                GradedOptions opt;
                opt.exponents = {1.0, 0.0};
                opt.breakpoints = g.breakpoints;
                return integrate_graded([&](double x, double s) { return z * x * g.density(x) / (s + w * x); },
                                        opt);
            },
        },
        spec.law());
}

}  // namespace

DiscPoint::DiscPoint(cplx z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("disc point is not finite");
    if (std::abs(z) > 1.0 + kDiscSlack) throw DomainError("|z| > 1: point lies outside the closed unit disc");
    if (z == cplx(1.0, 0.0)) throw DomainError("z = 1 is a pole of m; use abel_limit for the value at 1");
}

bool DiscPoint::on_boundary() const { return std::abs(z_) > 1.0 - kDiscSlack; }

std::string_view to_string(EvalMethod m) {
    switch (m) {
        case EvalMethod::series: return "series";
        case EvalMethod::integral: return "integral";
        case EvalMethod::closed_form: return "closed-form";
    }
    return "unknown";
}

SeriesValue m_series(const MomentSequence& u, const DiscPoint& z) {
    const double rho = z.modulus();
    if (rho >= 1.0) throw DomainError("m_series needs |z| < 1; use m_integral on the circle");
    const std::size_t K = u.order();
    cplx acc{};
    for (std::size_t k = K; k >= 1; --k) acc = (acc + u[k]) * z.z();
    SeriesValue out{acc, EvalMethod::series, 0.0};
    out.remainder_bound = K == 0 ? rho / (1.0 - rho) : u[K] * std::pow(rho, static_cast<double>(K + 1)) / (1.0 - rho);
    return out;
}

SeriesValue m_integral(const DistributionSpec& spec, const DiscPoint& z) {
    EvalMethod method = EvalMethod::integral;
    const cplx w = 1.0 - z.z();
    const cplx v = m_from_gap(spec, z.z(), w, z.on_boundary(), method);
    return {v, method, 0.0};
}

SeriesValue a_of_z(const DistributionSpec& spec, const DiscPoint& z) {
    SeriesValue m = m_integral(spec, z);
    m.value = m.value / (1.0 + m.value);
    return m;
}

double m_real(const DistributionSpec& spec, double gap) {
    if (!(gap > 0.0 && gap <= 1.0)) throw DomainError("m_real: need 0 < 1 - r <= 1");
    EvalMethod method = EvalMethod::integral;
    return m_from_gap(spec, cplx(1.0 - gap, 0.0), cplx(gap, 0.0), false, method).real();
}

std::vector<AbelRow> abel_table(const DistributionSpec& spec) {
    std::vector<AbelRow> table;
    for (int j = kAbelFirstLevel; j <= kAbelLastLevel; ++j) {
        const double gap = std::ldexp(1.0, -j);
        const double m = m_real(spec, gap);
        table.push_back({j, 1.0 - gap, m / (1.0 + m), m});
    }
    return table;
}

AbelResult extrapolate_abel(std::vector<AbelRow> table, MemoryClass memory) {
    constexpr std::size_t kTail = 6;
    if (table.size() < kTail) throw DomainError("extrapolate_abel: need at least 6 rows");
    const std::size_t n = table.size();
    auto plateau = [](double a) { return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a)); };

    double prev_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = n - kTail + 1; i < n; ++i) {
        const double step = table[i].a - table[i - 1].a;
        const double slack = plateau(table[i].a);
        if (step < -slack) {
            std::string msg = "Abel table is not monotone at j=" + std::to_string(table[i].j);
            throw ExtrapolationError(msg, std::move(table));
        }
        if (std::abs(step) > prev_step * (1.0 + 1e-6) + slack) {
            std::string msg = "Abel table increments stop shrinking at j=" + std::to_string(table[i].j);
            throw ExtrapolationError(msg, std::move(table));
        }
        prev_step = std::abs(step);
    }

    AbelResult out;
    out.memory = memory;
    const double a2 = table[n - 1].a;
    out.estimate = a2;
    if (memory == MemoryClass::short_memory) {
        const double d2 = a2 - table[n - 2].a;
        const double d1 = table[n - 2].a - table[n - 3].a;
        const double denom = d2 - d1;
        if (std::abs(d2) > plateau(a2) && std::abs(denom) > plateau(a2)) {
            out.estimate = a2 - d2 * d2 / denom;
            out.accelerated = true;
        }
    }
    out.table = std::move(table);
    return out;
}

AbelResult abel_limit(const DistributionSpec& spec) {
    return extrapolate_abel(abel_table(spec), memory_class(spec));
}

DiscGrid DiscGrid::standard() { return {{0.25, 0.5, 0.75, 0.95, 0.999}, 720}; }

std::vector<cplx> DiscGrid::points() const {
    std::vector<cplx> out;
    out.reserve(radii.size() * n_angles);
    for (double r : radii) {
        for (std::size_t k = 0; k < n_angles; ++k) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_angles);
            out.push_back(std::polar(r, t));
        }
    }
    return out;
}

PositivityResult re_positivity_check(const DistributionSpec& spec, const DiscGrid& grid) {
    PositivityResult out;
    out.min_value = std::numeric_limits<double>::infinity();
    for (const cplx& z : grid.points()) {
        const double v = 1.0 + m_integral(spec, DiscPoint(z)).value.real();
        ++out.n_points;
        if (v < out.min_value) {
            out.min_value = v;
            out.argmin = z;
        }
    }
    return out;
}

InjectivityReport circle_injectivity_check(const DistributionSpec& spec, double r, std::size_t n_angles) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("circle_injectivity_check: need 0 < r < 1");
    if (n_angles < 3) throw DomainError("circle_injectivity_check: need at least 3 angles");
    InjectivityReport rep;
    rep.r = r;
    rep.n_angles = n_angles;

    std::vector<double> t(n_angles), re(n_angles), im(n_angles), im_mirror(n_angles);
    double largest = 0.0;
    for (std::size_t j = 1; j < n_angles; ++j) {
        t[j] = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_angles);
        const cplx m = m_integral(spec, DiscPoint(std::polar(r, t[j]))).value;
        const cplx mm = m_integral(spec, DiscPoint(std::polar(r, 2.0 * std::numbers::pi - t[j]))).value;
        re[j] = m.real();
        im[j] = m.imag();
        im_mirror[j] = mm.imag();
        largest = std::max({largest, std::abs(m), std::abs(mm)});
    }
    if (largest == 0.0) {
        rep.vacuous = true;
        return rep;
    }
    for (std::size_t j = 1; j < n_angles; ++j) {
        if (j >= 2 && !(re[j] < re[j - 1])) {
            rep.monotone_real = false;
            rep.violations.push_back({"monotone_real", t[j], re[j] - re[j - 1]});
        }
        const double asym = std::abs(im[j] + im_mirror[j]);
        rep.max_antisymmetry_error = std::max(rep.max_antisymmetry_error, asym);
        if (asym > kAntisymmetryTol) {
            rep.antisymmetric = false;
            rep.violations.push_back({"antisymmetric", t[j], asym});
        }
        if (!(im[j] > 0.0)) {
            rep.positive_imag = false;
            rep.violations.push_back({"positive_imag", t[j], im[j]});
        }
    }
    return rep;
}

std::vector<GridSample> grid_sweep(const DistributionSpec& spec, const DiscGrid& grid) {
    std::vector<GridSample> out;
    for (const cplx& z : grid.points()) {
        const cplx m = m_integral(spec, DiscPoint(z)).value;
        out.push_back({z, m, m / (1.0 + m)});
    }
    return out;
}

}  // namespace aggar
