#pragma once

// Reference computations used only by the tests. None of these call into the
// library, so agreement with it is a genuine cross-check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// xorshift64* generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : s_(seed * 0x9E3779B97F4A7C15ULL + 1) {}
    std::uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545F4914F6CDD1DULL;
    }
    /// Uniform on [lo, hi).
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    std::uint64_t s_;
};

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

/// E[phi^k] for Beta(p, q) through the Gamma function.
inline double beta_moment(double p, double q, int k) {
    return std::exp(std::lgamma(p + k) + std::lgamma(p + q) - std::lgamma(p) - std::lgamma(p + q + k));
}

/// a_k from u_k by plain (uncompensated) long division of power series:
/// a(z) = m(z) / (1 + m(z)).
inline std::vector<double> ar_by_division(const std::vector<double>& u) {
    const std::size_t K = u.size() - 1;
    // b = 1 / (1 + m), b_0 = 1
    std::vector<double> b(K + 1, 0.0);
    b[0] = 1.0;
    for (std::size_t n = 1; n <= K; ++n) {
        long double acc = 0.0L;
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<long double>(u[k]) * b[n - k];
        b[n] = static_cast<double>(-acc);
    }
    // a = 1 - b
    std::vector<double> a(K + 1, 0.0);
    for (std::size_t n = 1; n <= K; ++n) a[n] = -b[n];
    return a;
}

/// Monomial coefficients of sum_j w_j * (n+1) C(n,j) x^j (1-x)^(n-j), a
/// density whenever the weights are non-negative and sum to 1.
inline std::vector<double> bernstein_to_monomial(const std::vector<double>& w) {
    const int n = static_cast<int>(w.size()) - 1;
    auto binom = [](int a, int b) {
        double r = 1.0;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    std::vector<double> c(w.size(), 0.0);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n - j; ++i) {
            const double sign = (i % 2) ? -1.0 : 1.0;
            c[j + i] += w[j] * (n + 1) * binom(n, j) * binom(n - j, i) * sign;
        }
    }
    return c;
}

}  // namespace oracle
