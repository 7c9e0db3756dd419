#include "aggar/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "aggar/errors.hpp"
#include "aggar/quadrature.hpp"
#include "overloaded.hpp"

namespace aggar {
namespace {

constexpr std::size_t kValidationGrid = 1001;
constexpr double kPolynomialNormTol = 1e-12;
constexpr double kGenericNormTol = 1e-8;
constexpr double kNonNegativeSlack = 1e-12;
constexpr std::size_t kMaxTableSize = 4097;

using detail::Overloaded;

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

void check_nonnegative_on_grid(const std::function<double(double)>& f, const char* what) {
    for (std::size_t i = 0; i < kValidationGrid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(kValidationGrid - 1);
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw ValidationError(std::string(what) + ": density is not finite at x=" + format_double(x));
        }
        if (v < -kNonNegativeSlack) {
            throw ValidationError(std::string(what) + ": density must be nonnegative on [0,1], f(" +
                                  format_double(x) + ")=" + format_double(v));
        }
    }
}

}  // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::beta: return "beta";
        case Family::uniform: return "uniform";
        case Family::polynomial: return "polynomial";
        case Family::dirac: return "dirac";
        case Family::generic: return "generic";
    }
    return "unknown";
}

double polynomial_value(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

double polynomial_at_one(const std::vector<double>& coeffs) {
    double s = 0.0;
    for (double c : coeffs) s += c;
    return s;
}

std::vector<double> panel_edges(const GenericLaw& law) {
    std::vector<double> edges{0.0, 1.0};
    for (double b : law.breakpoints) {
        if (b > 0.0 && b < 1.0) edges.push_back(b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

double integrate_against_density(const GenericLaw& law, const std::function<double(double)>& g,
                                 unsigned order) {
    const GaussRule& rule = gauss_legendre(order);
    const auto edges = panel_edges(law);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        total += integrate_gauss([&](double x) { return g(x) * law.density(x); }, edges[p],
                                 edges[p + 1], rule);
    }
    return total;
}

DistributionSpec DistributionSpec::beta(double p, double q) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw ValidationError("Beta: p must be a positive finite real (got " + format_double(p) + ")");
    }
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw ValidationError("Beta: q must be a positive finite real (got " + format_double(q) + ")");
    }
    return DistributionSpec(BetaLaw{p, q});
}

DistributionSpec DistributionSpec::uniform() { return DistributionSpec(UniformLaw{}); }

DistributionSpec DistributionSpec::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw ValidationError("Polynomial: coefficient vector is empty");
    for (double c : coeffs) {
        if (!std::isfinite(c)) throw ValidationError("Polynomial: coefficients must be finite");
    }
    double mass = 0.0;
    for (std::size_t s = 0; s < coeffs.size(); ++s) mass += coeffs[s] / static_cast<double>(s + 1);
    if (std::abs(mass - 1.0) > kPolynomialNormTol) {
        throw ValidationError("Polynomial: density must integrate to one (sum c_s/(s+1) = " +
                              format_double(mass) + ")");
    }
    check_nonnegative_on_grid([&](double x) { return polynomial_value(coeffs, x); }, "Polynomial");
    return DistributionSpec(PolynomialLaw{std::move(coeffs)});
}

DistributionSpec DistributionSpec::dirac(double phi0) {
    if (!(phi0 >= 0.0 && phi0 < 1.0)) {
        throw ValidationError("Dirac: phi0 must satisfy 0 <= phi0 < 1 (got " + format_double(phi0) + ")");
    }
    return DistributionSpec(DiracLaw{phi0});
}

DistributionSpec DistributionSpec::generic(std::function<double(double)> density,
                                           std::vector<double> breakpoints) {
    if (!density) throw ValidationError("Generic: density callable is empty");
    GenericLaw law{std::move(density), std::move(breakpoints), {}};
    check_nonnegative_on_grid(law.density, "Generic");
    const double mass = integrate_against_density(law, [](double) { return 1.0; });
    if (std::abs(mass - 1.0) > kGenericNormTol) {
        throw ValidationError("Generic: density must integrate to one within 1e-8 (got " +
                              format_double(mass) + ")");
    }
    return DistributionSpec(std::move(law));
}

DistributionSpec DistributionSpec::tabulated(std::vector<double> values) {
    if (values.size() < 2) throw ValidationError("Generic: a tabulated density needs at least 2 values");
    if (values.size() > kMaxTableSize) {
        throw ValidationError("Generic: a tabulated density supports at most 4097 values");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("Generic: tabulated density values must be finite and nonnegative");
        }
    }
    const std::size_t n = values.size() - 1;
    std::vector<double> breaks;
    breaks.reserve(n);
    for (std::size_t i = 1; i < n; ++i) breaks.push_back(static_cast<double>(i) / static_cast<double>(n));

    auto table = std::make_shared<const std::vector<double>>(values);
    auto density = [table, n](double x) {
        if (x <= 0.0) return table->front();
        if (x >= 1.0) return table->back();
        const double pos = x * static_cast<double>(n);
        const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
        const double frac = pos - static_cast<double>(i);
        return (*table)[i] + frac * ((*table)[i + 1] - (*table)[i]);
    };
    DistributionSpec spec = generic(density, std::move(breaks));
    std::get<GenericLaw>(spec.law_).table = std::move(values);
    return spec;
}

Family DistributionSpec::family() const {
    return std::visit(Overloaded{
                          [](const BetaLaw&) { return Family::beta; },
                          [](const UniformLaw&) { return Family::uniform; },
                          [](const PolynomialLaw&) { return Family::polynomial; },
                          [](const DiracLaw&) { return Family::dirac; },
                          [](const GenericLaw&) { return Family::generic; },
                      },
                      law_);
}

double DistributionSpec::density(double x) const {
    return std::visit(
        Overloaded{
            [x](const BetaLaw& b) {
                const double log_norm = std::lgamma(b.p + b.q) - std::lgamma(b.p) - std::lgamma(b.q);
                return std::exp(log_norm + (b.p - 1.0) * std::log(x) + (b.q - 1.0) * std::log1p(-x));
            },
            [](const UniformLaw&) { return 1.0; },
            [x](const PolynomialLaw& p) { return polynomial_value(p.coeffs, x); },
            [](const DiracLaw&) -> double {
                throw UnsupportedEvaluationError("Dirac law has no density");
            },
            [x](const GenericLaw& g) { return g.density(x); },
        },
        law_);
}

std::string DistributionSpec::describe() const {
    return std::visit(Overloaded{
                          [](const BetaLaw& b) {
                              return "Beta(" + format_double(b.p) + ", " + format_double(b.q) + ")";
                          },
                          [](const UniformLaw&) { return std::string("Uniform"); },
                          [](const PolynomialLaw& p) {
                              std::string s = "Polynomial[";
                              for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
                                  if (i) s += ", ";
                                  s += format_double(p.coeffs[i]);
                              }
                              return s + "]";
                          },
                          [](const DiracLaw& d) { return "Dirac(" + format_double(d.phi0) + ")"; },
                          [](const GenericLaw& g) {
                              return g.table.empty()
                                         ? std::string("Generic")
                                         : "Generic(tabulated, " + std::to_string(g.table.size()) + " points)";
                          },
                      },
                      law_);
}

std::vector<std::string> DistributionSpec::warnings() const {
    std::vector<std::string> out;
    if (const auto* b = std::get_if<BetaLaw>(&law_); b && b->q <= 0.5) {
        out.emplace_back("Beta with q <= 1/2: sum of squared moments diverges, so the aggregate "
                         "has no finite-variance limit");
    }
    return out;
}

}  // namespace aggar
