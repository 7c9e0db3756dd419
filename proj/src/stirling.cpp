#include "aggar/stirling.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "aggar/errors.hpp"
#include "aggar/summation.hpp"

namespace aggar {
namespace {

using boost::multiprecision::cpp_rational;

std::int64_t checked_mul_sub(std::int64_t a, std::int64_t k, std::int64_t b) {
    std::int64_t prod = 0;
    std::int64_t out = 0;
    if (__builtin_mul_overflow(k, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
        throw DomainError("Stirling number overflows 64-bit range");
    }
    return out;
}

}  // namespace

std::vector<std::int64_t> stirling_first_kind_row(std::size_t k) {
    if (k > kStirlingExactLimit) {
        throw DomainError("exact Stirling rows are limited to k <= " + std::to_string(kStirlingExactLimit));
    }
    // s(n+1, j) = s(n, j-1) - n s(n, j)
    std::vector<std::int64_t> row{1};
    for (std::size_t n = 0; n < k; ++n) {
        std::vector<std::int64_t> next(n + 2, 0);
        for (std::size_t j = 0; j <= n + 1; ++j) {
            const std::int64_t left = j >= 1 ? row[j - 1] : 0;
            const std::int64_t here = j <= n ? row[j] : 0;
            next[j] = checked_mul_sub(left, static_cast<std::int64_t>(n), here);
        }
        row = std::move(next);
    }
    return row;
}

StirlingResult uniform_ar_stirling(std::size_t K) {
    if (K < 1) throw DomainError("uniform_ar_stirling: K must be >= 1");
    StirlingResult out;
    std::vector<double> a(K, 0.0);
    out.scaled_integrals.assign(K + 1, 0.0);

    const std::size_t exact_top = std::min(K, kStirlingExactLimit);
    cpp_rational factorial = 1;
    for (std::size_t k = 1; k <= exact_top; ++k) {
        factorial *= static_cast<long long>(k);
        const auto row = stirling_first_kind_row(k);
        cpp_rational I = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            I += cpp_rational(row[j], static_cast<long long>(j + 1));
        }
        const cpp_rational scaled = I / factorial;
        out.scaled_integrals[k] = scaled.convert_to<double>();
        a[k - 1] = abs(scaled).convert_to<double>();
    }
    out.exact_through = exact_top;

    if (K > kStirlingExactLimit) {
        out.fallback = true;
        out.notice = "exact integer arithmetic covers k <= " + std::to_string(kStirlingExactLimit) + "; k = " +
                     std::to_string(kStirlingExactLimit + 1) + ".." + std::to_string(K) +
                     " use scaled floating point with compensated summation";
        // c_j = s(k, j) / k!, updated by c'(j) = (c(j-1) - k c(j)) / (k + 1)
        std::vector<double> c{0.0, 1.0};
        for (std::size_t k = 1; k < K; ++k) {
            std::vector<double> next(k + 2, 0.0);
            const double kk = static_cast<double>(k);
            for (std::size_t j = 1; j <= k + 1; ++j) {
                const double left = c[j - 1];
                const double here = j <= k ? c[j] : 0.0;
                next[j] = (left - kk * here) / (kk + 1.0);
            }
            c = std::move(next);
            const std::size_t row = k + 1;
            if (row <= kStirlingExactLimit) continue;
            CompensatedSum I;
            for (std::size_t j = 1; j <= row; ++j) I.add(c[j] / static_cast<double>(j + 1));
            out.scaled_integrals[row] = I.value();
            a[row - 1] = std::abs(I.value());
        }
    }
    out.coeffs = ARCoefficients::from_values(a);
    return out;
}

}  // namespace aggar
