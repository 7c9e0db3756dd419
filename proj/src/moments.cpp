#include "aggar/moments.hpp"

#include <cmath>
#include <string>

#include "aggar/errors.hpp"
#include "aggar/quadrature.hpp"
#include "aggar/summation.hpp"
#include "overloaded.hpp"

namespace aggar {
namespace {

constexpr double kQuadratureMonotoneTol = 1e-9;
constexpr double kClosedFormMonotoneTol = 1e-12;

void require_order(std::size_t K) {
    if (K < 1) throw DomainError("moment order K must be >= 1");
}

// Clamp rounding-level violations so the stored sequence is exactly monotone
// and nonnegative; anything larger than tol is an integrity failure.
void enforce_monotone(std::vector<double>& u, double tol) {
    for (std::size_t k = 1; k < u.size(); ++k) {
        if (u[k] > u[k - 1]) {
            if (u[k] - u[k - 1] > tol) {
                throw NumericalIntegrityError("moment sequence not monotone at k=" + std::to_string(k) +
                                              ": u_k - u_{k-1} = " + std::to_string(u[k] - u[k - 1]));
            }
            u[k] = u[k - 1];
        }
        if (u[k] < 0.0) {
            if (u[k] < -tol) {
                throw NumericalIntegrityError("moment sequence negative at k=" + std::to_string(k));
            }
            u[k] = 0.0;
        }
    }
}

// Moments of the density on the given panels with one GL rule; returns the
// unnormalized integrals of x^k f(x) for k = 0..K.
std::vector<double> panel_moments(const GenericLaw& law, const std::vector<double>& edges,
                                  const GaussRule& rule, std::size_t K) {
    std::vector<CompensatedSum> acc(K + 1);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = mid + half * rule.nodes[i];
            double term = rule.weights[i] * half * law.density(x);
            for (std::size_t k = 0; k <= K; ++k) {
                acc[k].add(term);
                term *= x;
            }
        }
    }
    std::vector<double> out(K + 1);
    for (std::size_t k = 0; k <= K; ++k) out[k] = acc[k].value();
    return out;
}

}  // namespace

std::string_view to_string(Exactness e) {
    return e == Exactness::closed_form ? "closed-form" : "quadrature";
}

std::string_view to_string(MemoryClass m) {
    return m == MemoryClass::short_memory ? "ShortMemory" : "LongMemory";
}

MomentSequence beta_moments(double p, double q, std::size_t K) {
    require_order(K);
    if (!(p > 0.0) || !(q > 0.0)) throw DomainError("beta_moments: p and q must be positive");
    MomentSequence m;
    m.u.resize(K + 1);
    m.u[0] = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double kk = static_cast<double>(k);
        m.u[k + 1] = m.u[k] * ((p + kk) / (p + q + kk));
    }
    return m;
}

MomentSequence uniform_moments(std::size_t K) {
    require_order(K);
    MomentSequence m;
    m.u.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) m.u[k] = 1.0 / static_cast<double>(k + 1);
    return m;
}

MomentSequence poly_moments(const std::vector<double>& coeffs, std::size_t K) {
    require_order(K);
    // validates normalization and nonnegativity
    (void)DistributionSpec::polynomial(coeffs);
    MomentSequence m;
    m.u.resize(K + 1);
    m.u[0] = 1.0;
    for (std::size_t k = 1; k <= K; ++k) {
        CompensatedSum acc;
        for (std::size_t s = 0; s < coeffs.size(); ++s) {
            acc.add(coeffs[s] / static_cast<double>(s + k + 1));
        }
        m.u[k] = acc.value();
    }
    enforce_monotone(m.u, kClosedFormMonotoneTol);
    return m;
}

MomentSequence dirac_moments(double phi0, std::size_t K) {
    require_order(K);
    if (!(phi0 >= 0.0 && phi0 < 1.0)) throw DomainError("dirac_moments: phi0 must lie in [0, 1)");
    MomentSequence m;
    m.u.resize(K + 1);
    m.u[0] = 1.0;
    for (std::size_t k = 1; k <= K; ++k) m.u[k] = m.u[k - 1] * phi0;
    return m;
}

MomentSequence generic_moments(const GenericLaw& law, std::size_t K) {
    require_order(K);
    const auto edges = panel_edges(law);
    std::vector<double> halved;
    halved.reserve(2 * edges.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        halved.push_back(edges[p]);
        halved.push_back(0.5 * (edges[p] + edges[p + 1]));
    }
    halved.push_back(1.0);

    const GaussRule& rule = gauss_legendre(128);
    const auto coarse = panel_moments(law, edges, rule, K);
    const auto fine = panel_moments(law, halved, rule, K);

    MomentSequence m;
    m.exactness = Exactness::quadrature;
    m.u.resize(K + 1);
    const double mass = fine[0];
    if (!(mass > 0.0)) throw NumericalIntegrityError("generic density has zero mass");
    m.u[0] = 1.0;
    for (std::size_t k = 1; k <= K; ++k) {
        m.u[k] = fine[k] / mass;
        m.quadrature_error = std::max(m.quadrature_error, std::abs(fine[k] / mass - coarse[k] / coarse[0]));
    }
    enforce_monotone(m.u, kQuadratureMonotoneTol);
    return m;
}

MomentSequence moments(const DistributionSpec& spec, std::size_t K) {
    return std::visit(detail::Overloaded{
                          [K](const BetaLaw& b) { return beta_moments(b.p, b.q, K); },
                          [K](const UniformLaw&) { return uniform_moments(K); },
                          [K](const PolynomialLaw& p) { return poly_moments(p.coeffs, K); },
                          [K](const DiracLaw& d) { return dirac_moments(d.phi0, K); },
                          [K](const GenericLaw& g) { return generic_moments(g, K); },
                      },
                      spec.law());
}

MomentSequence moment_sequence_from_values(std::vector<double> u) {
    if (u.size() < 2) throw ValidationError("moment sequence needs u_0 and at least u_1");
    if (u[0] != 1.0) throw ValidationError("moment sequence must start with u_0 = 1");
    for (std::size_t k = 1; k < u.size(); ++k) {
        if (!std::isfinite(u[k])) {
            throw ValidationError("moment u_" + std::to_string(k) + " is not finite");
        }
        if (u[k] > u[k - 1]) {
            throw ValidationError("moments must be nonincreasing: u_" + std::to_string(k) + " > u_" +
                                  std::to_string(k - 1));
        }
        if (u[k] < 0.0) throw ValidationError("moments must be nonnegative: u_" + std::to_string(k) + " < 0");
    }
    MomentSequence m;
    m.u = std::move(u);
    return m;
}

double polynomial_diagonal_sum(const std::vector<double>& coeffs) {
    CompensatedSum total;
    double prefix = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        prefix += coeffs[n];
        total.add(prefix / static_cast<double>(n + 1));
    }
    return total.value();
}

DivergenceProbe probe_inverse_gap(const GenericLaw& law, const std::function<double(double)>& weight) {
    constexpr int kFirstLevel = 10;
    constexpr int kLastLevel = 30;
    const GaussRule& rule = gauss_legendre(32);
    const auto edges = panel_edges(law);

    auto integrand_s = [&](double s) {
        const double x = 1.0 - s;
        return weight(x) * law.density(x) / s;
    };
    // Integral over x in [lo, hi] split at breakpoints, evaluated in s = 1 - x.
    auto piece = [&](double x_lo, double x_hi) {
        std::vector<double> cuts{x_lo};
        for (double e : edges) {
            if (e > x_lo && e < x_hi) cuts.push_back(e);
        }
        cuts.push_back(x_hi);
        double total = 0.0;
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            total += integrate_gauss(integrand_s, 1.0 - cuts[p + 1], 1.0 - cuts[p], rule);
        }
        return total;
    };

    // increments[j] = integral over [1 - 2^-(j-1), 1 - 2^-j]
    std::vector<double> increments(kLastLevel + 1, 0.0);
    double running = 0.0;
    {
        // base [0, 1/2]
        std::vector<double> cuts{0.0};
        for (double e : edges) {
            if (e > 0.0 && e < 0.5) cuts.push_back(e);
        }
        cuts.push_back(0.5);
        const GaussRule& base_rule = gauss_legendre(128);
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            running += integrate_gauss([&](double x) { return weight(x) * law.density(x) / (1.0 - x); },
                                       cuts[p], cuts[p + 1], base_rule);
        }
    }
    DivergenceProbe probe;
    for (int j = 2; j <= kLastLevel; ++j) {
        const double x_lo = 1.0 - std::ldexp(1.0, -(j - 1));
        const double x_hi = 1.0 - std::ldexp(1.0, -j);
        increments[j] = piece(x_lo, x_hi);
        running += increments[j];
        if (j >= kFirstLevel) {
            probe.levels.push_back(j);
            probe.truncated.push_back(running);
        }
    }
    const double d_last = increments[kLastLevel];
    const double d_ref = increments[kLastLevel - 5];
    if (d_ref <= 0.0) {
        probe.growth = 0.0;
        probe.result = d_last <= 0.0 ? ExtendedReal::finite(running) : ExtendedReal::indeterminate();
        return probe;
    }
    probe.growth = d_last / d_ref;
    if (probe.growth >= 1.0 / kDivergenceGrowthFactor) {
        probe.result = ExtendedReal::infinity();
    } else if (probe.growth <= 1.0 / kConvergenceShrinkFactor) {
        const double rho = std::pow(probe.growth, 0.2);
        probe.result = ExtendedReal::finite(running + d_last * rho / (1.0 - rho));
    } else {
        probe.result = ExtendedReal::indeterminate();
    }
    return probe;
}

ExtendedReal mean_inverse_gap(const DistributionSpec& spec) {
    return std::visit(
        detail::Overloaded{
            [](const BetaLaw& b) {
                return b.q > 1.0 ? ExtendedReal::finite((b.p + b.q - 1.0) / (b.q - 1.0))
                                 : ExtendedReal::infinity();
            },
            [](const UniformLaw&) { return ExtendedReal::infinity(); },
            [](const PolynomialLaw& p) {
                if (polynomial_at_one(p.coeffs) > kPolynomialEndpointZeroTol) return ExtendedReal::infinity();
                return ExtendedReal::finite(polynomial_diagonal_sum(p.coeffs));
            },
            [](const DiracLaw& d) { return ExtendedReal::finite(1.0 / (1.0 - d.phi0)); },
            [](const GenericLaw& g) { return probe_inverse_gap(g, [](double) { return 1.0; }).result; },
        },
        spec.law());
}

MemoryClass memory_class(const DistributionSpec& spec) {
    const ExtendedReal gap = mean_inverse_gap(spec);
    if (gap.is_indeterminate()) {
        throw IndeterminateError("cannot resolve E[1/(1-phi)] for " + spec.describe() +
                                 "; memory class is indeterminate");
    }
    return gap.is_infinite() ? MemoryClass::long_memory : MemoryClass::short_memory;
}

}  // namespace aggar
