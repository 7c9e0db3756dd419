#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aggar/distribution.hpp"
#include "aggar/moments.hpp"

namespace aggar {

inline constexpr std::size_t kDefaultBurnIn = 2000;
inline constexpr std::size_t kMaxBurnIn = 1'000'000;
/// Units whose phi exceeds this get a longer burn-in, 10 / (1 - max phi).
inline constexpr double kSlowMixingPhi = 0.999;
/// Knots of the tabulated inverse CDF used for polynomial and generic draws.
inline constexpr std::size_t kInverseCdfKnots = 4096;

/// Disaggregate model x_{i,t} = phi_i x_{i,t-1} + eps_t + eta_{i,t} with equal
/// weights 1/N.
struct PanelConfig {
    DistributionSpec spec = DistributionSpec::uniform();
    std::size_t N = 1000;
    std::size_t T = 1000;
    std::size_t burn_in = kDefaultBurnIn;
    double sigma_eps = 1.0;
    double sigma_eta = 1.0;
    std::uint64_t seed = 0;
    /// Worker threads for the idiosyncratic part; the output does not depend on it.
    unsigned threads = 1;
    /// Keep the full N x T panel (unit-major) in the run.
    bool retain_panel = false;

    /// Throws ValidationError on N = 0, T = 0, negative or all-zero sigmas.
    void validate() const;
};

struct PanelRun {
    PanelConfig config;
    /// X_{N,t}, t = 1..T.
    std::vector<double> aggregate;
    std::vector<double> phi_draws;
    /// eps_t, t = 1..T.
    std::vector<double> common_shocks;
    /// x_{i,t} at index i * T + (t - 1), when retained.
    std::optional<std::vector<double>> panel;
    std::size_t burn_in_used = 0;
    std::vector<std::string> warnings;
};

/// Seed of the substream for (seed, stream tag, unit index).
[[nodiscard]] std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

/// N draws from the mixing law, each from its own substream.
[[nodiscard]] std::vector<double> draw_phi(const DistributionSpec& spec, std::size_t N, std::uint64_t seed);

[[nodiscard]] PanelRun simulate_panel(const PanelConfig& cfg);

/// (1/N) sum_i phi_i^k for k = 0..K, index 0 equal to 1.
[[nodiscard]] std::vector<double> empirical_cross_moments(std::span<const double> phi, std::size_t K);

/// Standard error of each empirical moment, k = 0..K (index 0 is 0).
[[nodiscard]] std::vector<double> empirical_cross_moment_se(std::span<const double> phi, std::size_t K);

struct Autocovariance {
    /// gamma(h), h = 0..H.
    std::vector<double> gamma;
    /// Moments used in the truncated convolution.
    std::size_t truncation = 0;
};

/// gamma(h) = sigma^2 sum_{k=0}^{K-h} u_k u_{k+h}.
[[nodiscard]] Autocovariance theoretical_acov(const MomentSequence& u, double sigma_eps, std::size_t H);

/// E[phi^h / (1 - phi^2)], the cross-sectional mean of the unit-variance
/// individual autocovariances. +infinity when E[1/(1-phi)] diverges.
[[nodiscard]] ExtendedReal mean_individual_acov(const DistributionSpec& spec, std::size_t h);

struct SampleAcf {
    std::vector<double> acov;
    std::vector<double> acf;
};

/// Biased (divisor T) autocovariances and their ratios to lag 0. Requires
/// T > 10 H; a constant path throws DomainError.
[[nodiscard]] SampleAcf sample_acf(std::span<const double> path, std::size_t H);

/// (1/T) sum (x_t - mean)^2.
[[nodiscard]] double sample_variance(std::span<const double> path);

/// Expected value of sample_variance for a stationary AR(1) path of length T
/// with coefficient phi and innovation variance sigma^2.
[[nodiscard]] double expected_sample_variance_ar1(double phi, double sigma, std::size_t T);

struct StudyLevel {
    std::size_t N = 0;
    /// Seed-averaged sample variance of X_{N,t}.
    double variance = 0.0;
    /// Seed-averaged (1/N) sum_i E[sample variance of unit i | phi_i]; the
    /// idiosyncratic variance is close to this divided by N.
    double unit_scale = 0.0;
};

struct StudyReport {
    std::string spec;
    std::size_t T = 0;
    double sigma_eps = 0.0;
    double sigma_eta = 0.0;
    std::vector<std::uint64_t> seeds;
    std::vector<StudyLevel> levels;
    /// Least-squares slope of log variance against log N.
    double raw_slope = 0.0;
    /// Same slope after dividing each variance by its unit_scale.
    double normalized_slope = 0.0;
    bool monotone_decreasing = false;
};

/// Variance of the aggregate across increasing N, averaged over seeds.
[[nodiscard]] StudyReport aggregation_convergence_study(const DistributionSpec& spec,
                                                        const std::vector<std::size_t>& N_list, std::size_t T,
                                                        const std::vector<std::uint64_t>& seeds, double sigma_eps,
                                                        double sigma_eta, unsigned threads = 1);

}  // namespace aggar
