#pragma once

#include <cmath>
#include <span>

namespace aggar {

/// Error-free transformation: a + b = s + e exactly.
struct TwoTerm {
    double hi;
    double lo;
};

inline TwoTerm two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline TwoTerm two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

/// Running sum with Neumaier compensation. Order-dependent only at the level
/// of the final rounding.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Dot product accumulated in twice the working precision (Ogita, Rump, Oishi).
class CompensatedDot {
public:
    void add(double a, double b) {
        const auto [p, pe] = two_prod(a, b);
        const auto [s, se] = two_sum(sum_, p);
        sum_ = s;
        err_ += pe + se;
    }
    [[nodiscard]] double value() const { return sum_ + err_; }

private:
    double sum_ = 0.0;
    double err_ = 0.0;
};

[[nodiscard]] double compensated_sum(std::span<const double> xs);

/// Pairwise (cascade) summation; deterministic for a fixed input order.
[[nodiscard]] double pairwise_sum(std::span<const double> xs);

}  // namespace aggar
