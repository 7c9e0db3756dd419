#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

namespace aggar {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    [[nodiscard]] unsigned order() const { return static_cast<unsigned>(nodes.size()); }
};

/// Cached rule of the given order. Supported orders: 8, 16, 32, 64, 128.
const GaussRule& gauss_legendre(unsigned order);

template <class F>
auto integrate_gauss(F&& f, double a, double b, const GaussRule& rule) {
    using R = std::invoke_result_t<F, double>;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    R acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return acc * half;
}

/// Local power-law behaviour of the integrand at the ends of [0, 1]:
/// F(x) ~ x^left near 0 and F(x) ~ (1-x)^right near 1. Both must exceed -1.
struct EndpointExponents {
    double left = 0.0;
    double right = 0.0;
};

struct GradedOptions {
    unsigned order = 32;
    int depth = 60;
    EndpointExponents exponents{};
    std::span<const double> breakpoints{};
};

/// Integral over [0, 1] on panels graded geometrically toward both endpoints
/// (edges at 2^-i and 1 - 2^-i), split further at interior breakpoints.
/// The integrand is called as f(x, 1 - x) where the complement is formed
/// without cancellation near x = 1. The two sub-2^-depth end intervals are
/// closed analytically from the declared exponents.
template <class F>
auto integrate_graded(F&& f, const GradedOptions& opt) {
    using R = std::invoke_result_t<F, double, double>;
    const GaussRule& rule = gauss_legendre(opt.order);

    std::vector<double> left{0.5};
    std::vector<double> right{0.5};
    double h = 0.5;
    for (int i = 0; i < opt.depth; ++i) {
        h *= 0.5;
        left.push_back(h);
        right.push_back(h);
    }
    for (double b : opt.breakpoints) {
        if (b <= 0.0 || b >= 1.0) continue;
        if (b <= 0.5) {
            left.push_back(b);
        } else {
            right.push_back(1.0 - b);
        }
    }
    std::sort(left.begin(), left.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());
    std::sort(right.begin(), right.end());
    right.erase(std::unique(right.begin(), right.end()), right.end());

    R acc{};
    // near x = 0, in x
    for (std::size_t p = 0; p + 1 < left.size(); ++p) {
        const double a = left[p];
        const double b = left[p + 1];
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        R panel{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = mid + half * rule.nodes[i];
            panel += rule.weights[i] * f(x, 1.0 - x);
        }
        acc += panel * half;
    }
    // near x = 1, in s = 1 - x
    for (std::size_t p = 0; p + 1 < right.size(); ++p) {
        const double a = right[p];
        const double b = right[p + 1];
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        R panel{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double s = mid + half * rule.nodes[i];
            panel += rule.weights[i] * f(1.0 - s, s);
        }
        acc += panel * half;
    }
    const double eps_left = left.front();
    const double eps_right = right.front();
    acc += f(eps_left, 1.0 - eps_left) * (eps_left / (opt.exponents.left + 1.0));
    acc += f(1.0 - eps_right, eps_right) * (eps_right / (opt.exponents.right + 1.0));
    return acc;
}

}  // namespace aggar
