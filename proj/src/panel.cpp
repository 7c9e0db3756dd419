#include "aggar/panel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

// pchip.hpp calls isnan unqualified
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "aggar/errors.hpp"
#include "aggar/quadrature.hpp"
#include "aggar/summation.hpp"
#include "overloaded.hpp"

namespace aggar {
namespace {

using detail::Overloaded;

constexpr std::uint64_t kTagPhi = 0x7068690000000001ULL;
constexpr std::uint64_t kTagCommon = 0x636f6d0000000002ULL;
constexpr std::uint64_t kTagIdio = 0x6964690000000003ULL;
constexpr std::size_t kBlockUnits = 256;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double below_one(double x) { return std::min(x, std::nextafter(1.0, 0.0)); }

// x as a monotone function of F on kInverseCdfKnots equispaced x knots.
class InverseCdf {
public:
    explicit InverseCdf(const std::function<double(double)>& density) {
        const std::size_t n = kInverseCdfKnots;
        const GaussRule& rule = gauss_legendre(8);
        std::vector<double> F(n, 0.0);
        std::vector<double> x(n, 0.0);
        CompensatedSum acc;
        for (std::size_t i = 1; i < n; ++i) {
            x[i] = static_cast<double>(i) / static_cast<double>(n - 1);
            const double lo = static_cast<double>(i - 1) / static_cast<double>(n - 1);
            acc.add(std::max(0.0, integrate_gauss(density, lo, x[i], rule)));
            F[i] = acc.value();
        }
        const double total = F.back();
        if (!(total > 0.0)) throw NumericalIntegrityError("inverse CDF: density has zero mass");
        std::vector<double> fx{0.0};
        std::vector<double> xx{0.0};
        for (std::size_t i = 1; i < n; ++i) {
            const double v = i + 1 == n ? 1.0 : F[i] / total;
            if (v > fx.back()) {
                fx.push_back(v);
                xx.push_back(x[i]);
            }
        }
        fx.back() = 1.0;
        xx.back() = 1.0;
        if (fx.size() < 4) throw NumericalIntegrityError("inverse CDF: too few distinct CDF knots");
        spline_.emplace(std::move(fx), std::move(xx));
    }

    double operator()(double u) const { return std::clamp((*spline_)(u), 0.0, 1.0); }

private:
    std::optional<boost::math::interpolators::pchip<std::vector<double>>> spline_;
};

template <class Draw>
std::vector<double> draw_each(std::size_t N, std::uint64_t seed, Draw&& draw) {
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        std::mt19937_64 rng(substream_seed(seed, kTagPhi, i));
        out[i] = below_one(draw(rng));
    }
    return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

// Sum over units of the idiosyncratic AR(1) paths for units [lo, hi).
void idiosyncratic_block(const PanelConfig& cfg, const std::vector<double>& phi, std::size_t lo, std::size_t hi,
                         std::vector<double>& partial, std::vector<double>* panel) {
    const std::size_t T = cfg.T;
    std::fill(partial.begin(), partial.end(), 0.0);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = lo; i < hi; ++i) {
        std::mt19937_64 rng(substream_seed(cfg.seed, kTagIdio, i));
        const double p = phi[i];
        // exact stationary start
        double y = normal(rng) * cfg.sigma_eta / std::sqrt((1.0 - p) * (1.0 + p));
        for (std::size_t t = 0; t < T; ++t) {
            y = p * y + cfg.sigma_eta * normal(rng);
            partial[t] += y;
            if (panel) (*panel)[i * T + t] += y;
        }
    }
}

}  // namespace

void PanelConfig::validate() const {
    if (N < 1) throw ValidationError("panel: N must be >= 1");
    if (T < 1) throw ValidationError("panel: T must be >= 1");
    if (!(sigma_eps >= 0.0) || !(sigma_eta >= 0.0)) throw ValidationError("panel: sigmas must be >= 0");
    if (sigma_eps == 0.0 && sigma_eta == 0.0) throw ValidationError("panel: sigma_eps and sigma_eta are both zero");
    if (threads < 1) throw ValidationError("panel: threads must be >= 1");
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ index);
}

std::vector<double> draw_phi(const DistributionSpec& spec, std::size_t N, std::uint64_t seed) {
    return std::visit(
        Overloaded{
            [&](const DiracLaw& d) { return std::vector<double>(N, d.phi0); },
            [&](const UniformLaw&) { return draw_each(N, seed, [](std::mt19937_64& rng) { return uniform01(rng); }); },
            [&](const BetaLaw& b) {
                return draw_each(N, seed, [&](std::mt19937_64& rng) {
                    boost::random::gamma_distribution<double> gx(b.p);
                    boost::random::gamma_distribution<double> gy(b.q);
                    const double x = gx(rng);
                    const double y = gy(rng);
                    return x + y > 0.0 ? x / (x + y) : 0.0;
                });
            },
            [&](const PolynomialLaw& p) {
                const InverseCdf inv([&](double x) { return polynomial_value(p.coeffs, x); });
                return draw_each(N, seed, [&](std::mt19937_64& rng) { return inv(uniform01(rng)); });
            },
            [&](const GenericLaw& g) {
                const InverseCdf inv(g.density);
                return draw_each(N, seed, [&](std::mt19937_64& rng) { return inv(uniform01(rng)); });
            },
        },
        spec.law());
}

PanelRun simulate_panel(const PanelConfig& cfg) {
    cfg.validate();
    PanelRun run;
    run.config = cfg;
    run.phi_draws = draw_phi(cfg.spec, cfg.N, cfg.seed);
    const auto& phi = run.phi_draws;
    const std::size_t N = cfg.N;
    const std::size_t T = cfg.T;

    std::size_t burn = cfg.burn_in;
    const double max_phi = *std::max_element(phi.begin(), phi.end());
    if (max_phi > kSlowMixingPhi) {
        const double wanted = std::ceil(10.0 / (1.0 - max_phi));
        if (wanted > static_cast<double>(kMaxBurnIn)) {
            burn = std::max(burn, kMaxBurnIn);
            run.warnings.push_back("burn-in capped at 1000000 steps; max phi = " + std::to_string(max_phi) +
                                   " would need " + std::to_string(wanted));
        } else {
            burn = std::max(burn, static_cast<std::size_t>(wanted));
        }
    }
    run.burn_in_used = burn;

    if (cfg.retain_panel) run.panel.emplace(N * T, 0.0);
    std::vector<double>* panel = cfg.retain_panel ? &*run.panel : nullptr;

    // common part: c_{i,t} = phi_i c_{i,t-1} + eps_t from c = 0, all units in lockstep
    std::vector<double> common(T, 0.0);
    run.common_shocks.assign(T, 0.0);
    if (cfg.sigma_eps > 0.0) {
        std::mt19937_64 rng(substream_seed(cfg.seed, kTagCommon, 0));
        boost::random::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> c(N, 0.0);
        const double inv_n = 1.0 / static_cast<double>(N);
        for (std::size_t t = 0; t < burn + T; ++t) {
            const double e = cfg.sigma_eps * normal(rng);
            for (std::size_t i = 0; i < N; ++i) c[i] = phi[i] * c[i] + e;
            if (t < burn) continue;
            const std::size_t tt = t - burn;
            run.common_shocks[tt] = e;
            // centred on unit 0 so identical paths aggregate exactly
            const double ref = c[0];
            double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
            std::size_t i = 0;
            for (; i + 4 <= N; i += 4) {
                s0 += c[i] - ref;
                s1 += c[i + 1] - ref;
                s2 += c[i + 2] - ref;
                s3 += c[i + 3] - ref;
            }
            for (; i < N; ++i) s0 += c[i] - ref;
            common[tt] = ref + ((s0 + s1) + (s2 + s3)) * inv_n;
            if (panel) {
                for (std::size_t u = 0; u < N; ++u) (*panel)[u * T + tt] = c[u];
            }
        }
    }

    std::vector<double> idio(T, 0.0);
    if (cfg.sigma_eta > 0.0) {
        const std::size_t n_blocks = (N + kBlockUnits - 1) / kBlockUnits;
        const std::size_t wave = std::min<std::size_t>(cfg.threads, n_blocks);
        std::vector<std::vector<double>> partial(wave, std::vector<double>(T, 0.0));
        for (std::size_t first = 0; first < n_blocks; first += wave) {
            const std::size_t count = std::min(wave, n_blocks - first);
            auto job = [&](std::size_t w) {
                const std::size_t b = first + w;
                idiosyncratic_block(cfg, phi, b * kBlockUnits, std::min(N, (b + 1) * kBlockUnits), partial[w],
                                    panel);
            };
            if (count == 1) {
                job(0);
            } else {
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < count; ++w) pool.emplace_back(job, w);
                for (auto& th : pool) th.join();
            }
            // block order, independent of how the blocks were scheduled
            for (std::size_t w = 0; w < count; ++w) {
                for (std::size_t t = 0; t < T; ++t) idio[t] += partial[w][t];
            }
        }
        for (double& v : idio) v /= static_cast<double>(N);
    }

    run.aggregate.resize(T);
    for (std::size_t t = 0; t < T; ++t) run.aggregate[t] = common[t] + idio[t];
    return run;
}

std::vector<double> empirical_cross_moments(std::span<const double> phi, std::size_t K) {
    if (phi.empty()) throw DomainError("empirical_cross_moments: no draws");
    std::vector<CompensatedSum> acc(K + 1);
    for (double p : phi) {
        double pk = 1.0;
        for (std::size_t k = 0; k <= K; ++k) {
            acc[k].add(pk);
            pk *= p;
        }
    }
    std::vector<double> out(K + 1);
    for (std::size_t k = 0; k <= K; ++k) out[k] = acc[k].value() / static_cast<double>(phi.size());
    out[0] = 1.0;
    return out;
}

std::vector<double> empirical_cross_moment_se(std::span<const double> phi, std::size_t K) {
    const auto mean = empirical_cross_moments(phi, K);
    std::vector<double> out(K + 1, 0.0);
    const std::size_t n = phi.size();
    if (n < 2) return out;
    for (std::size_t k = 1; k <= K; ++k) {
        CompensatedSum ss;
        for (double p : phi) {
            const double d = std::pow(p, static_cast<double>(k)) - mean[k];
            ss.add(d * d);
        }
        out[k] = std::sqrt(ss.value() / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return out;
}

Autocovariance theoretical_acov(const MomentSequence& u, double sigma_eps, std::size_t H) {
    const std::size_t K = u.order();
    if (H > K) throw DomainError("theoretical_acov: H exceeds the moment order");
    Autocovariance out;
    out.truncation = K;
    out.gamma.resize(H + 1);
    const double s2 = sigma_eps * sigma_eps;
    for (std::size_t h = 0; h <= H; ++h) {
        CompensatedDot dot;
        for (std::size_t k = 0; k + h <= K; ++k) dot.add(u[k], u[k + h]);
        out.gamma[h] = s2 * dot.value();
    }
    return out;
}

ExtendedReal mean_individual_acov(const DistributionSpec& spec, std::size_t h) {
    const double hh = static_cast<double>(h);
    if (const auto* d = std::get_if<DiracLaw>(&spec.law())) {
        return ExtendedReal::finite(std::pow(d->phi0, hh) / ((1.0 - d->phi0) * (1.0 + d->phi0)));
    }
    const ExtendedReal gap = mean_inverse_gap(spec);
    if (!gap.is_finite()) return gap;
    return std::visit(
        Overloaded{
            [&](const BetaLaw& b) {
                const double ln = std::lgamma(b.p + b.q) - std::lgamma(b.p) - std::lgamma(b.q);
                GradedOptions opt;
                opt.exponents = {hh + b.p - 1.0, b.q - 2.0};
                const double v = integrate_graded(
                    [&](double x, double s) {
                        return std::exp(ln + (hh + b.p - 1.0) * std::log(x) + (b.q - 2.0) * std::log(s)) / (1.0 + x);
                    },
                    opt);
                return ExtendedReal::finite(v);
            },
            [&](const PolynomialLaw& p) {
                // f(x) = (1 - x) g(x) when f(1) = 0
                const auto& c = p.coeffs;
                std::vector<double> g(c.size() > 1 ? c.size() - 1 : 1, 0.0);
                double carry = 0.0;
                for (std::size_t k = c.size(); k-- > 1;) {
                    carry += c[k];
                    g[k - 1] = -carry;
                }
                const double v = integrate_gauss(
                    [&](double x) { return std::pow(x, hh) * polynomial_value(g, x) / (1.0 + x); }, 0.0, 1.0,
                    gauss_legendre(128));
                return ExtendedReal::finite(v);
            },
            [&](const GenericLaw& g) {
                return probe_inverse_gap(g, [hh](double x) { return std::pow(x, hh) / (1.0 + x); }).result;
            },
            [&](const auto&) { return ExtendedReal::infinity(); },
        },
        spec.law());
}

double sample_variance(std::span<const double> path) {
    if (path.empty()) throw DomainError("sample_variance: empty path");
    const double mean = compensated_sum(path) / static_cast<double>(path.size());
    CompensatedSum ss;
    for (double x : path) ss.add((x - mean) * (x - mean));
    return ss.value() / static_cast<double>(path.size());
}

SampleAcf sample_acf(std::span<const double> path, std::size_t H) {
    const std::size_t T = path.size();
    if (T <= 10 * H) throw DomainError("sample_acf: need T > 10 H");
    const double mean = compensated_sum(path) / static_cast<double>(T);
    SampleAcf out;
    out.acov.resize(H + 1);
    out.acf.resize(H + 1);
    for (std::size_t h = 0; h <= H; ++h) {
        CompensatedDot dot;
        for (std::size_t t = 0; t + h < T; ++t) dot.add(path[t] - mean, path[t + h] - mean);
        out.acov[h] = dot.value() / static_cast<double>(T);
    }
    if (!(out.acov[0] > 0.0)) throw DomainError("sample_acf: constant path, autocorrelation undefined");
    for (std::size_t h = 0; h <= H; ++h) out.acf[h] = out.acov[h] / out.acov[0];
    return out;
}

double expected_sample_variance_ar1(double phi, double sigma, std::size_t T) {
    if (!(phi >= 0.0 && phi < 1.0)) throw DomainError("expected_sample_variance_ar1: need 0 <= phi < 1");
    if (T < 1) throw DomainError("expected_sample_variance_ar1: T must be >= 1");
    const double om = 1.0 - phi;
    const double n = static_cast<double>(T);
    const double gamma0 = sigma * sigma / (om * (1.0 + phi));
    // sum_{h=1}^{T-1} (1 - h/T) phi^h
    double weighted = 0.0;
    if (phi > 0.0) {
        const double one_minus_phiT = -std::expm1(n * std::log1p(-om));
        weighted = (phi / om) * (1.0 - one_minus_phiT / (n * om));
    }
    const double var_mean = gamma0 / n * (1.0 + 2.0 * weighted);
    return gamma0 - var_mean;
}

StudyReport aggregation_convergence_study(const DistributionSpec& spec, const std::vector<std::size_t>& N_list,
                                          std::size_t T, const std::vector<std::uint64_t>& seeds, double sigma_eps,
                                          double sigma_eta, unsigned threads) {
    if (N_list.size() < 2) throw DomainError("study: need at least two N values");
    for (std::size_t i = 1; i < N_list.size(); ++i) {
        if (N_list[i] <= N_list[i - 1]) throw DomainError("study: N_list must be increasing");
    }
    if (seeds.size() < 2) throw DomainError("study: need at least two seeds");

    StudyReport rep;
    rep.spec = spec.describe();
    rep.T = T;
    rep.sigma_eps = sigma_eps;
    rep.sigma_eta = sigma_eta;
    rep.seeds = seeds;
    std::vector<double> logN, logV, logNorm;
    for (std::size_t N : N_list) {
        StudyLevel level;
        level.N = N;
        for (std::uint64_t seed : seeds) {
            PanelConfig cfg;
            cfg.spec = spec;
            cfg.N = N;
            cfg.T = T;
            cfg.sigma_eps = sigma_eps;
            cfg.sigma_eta = sigma_eta;
            cfg.seed = seed;
            cfg.threads = threads;
            const PanelRun run = simulate_panel(cfg);
            level.variance += sample_variance(run.aggregate);
            CompensatedSum scale;
            for (double p : run.phi_draws) scale.add(expected_sample_variance_ar1(p, sigma_eta, T));
            level.unit_scale += scale.value() / static_cast<double>(N);
        }
        level.variance /= static_cast<double>(seeds.size());
        level.unit_scale /= static_cast<double>(seeds.size());
        logN.push_back(std::log(static_cast<double>(N)));
        logV.push_back(std::log(level.variance));
        logNorm.push_back(level.unit_scale > 0.0 ? std::log(level.variance / level.unit_scale) : logV.back());
        rep.levels.push_back(level);
    }
    rep.raw_slope = least_squares_slope(logN, logV);
    rep.normalized_slope = least_squares_slope(logN, logNorm);
    rep.monotone_decreasing = true;
    for (std::size_t i = 1; i < rep.levels.size(); ++i) {
        if (!(rep.levels[i].variance < rep.levels[i - 1].variance)) rep.monotone_decreasing = false;
    }
    return rep;
}

}  // namespace aggar
