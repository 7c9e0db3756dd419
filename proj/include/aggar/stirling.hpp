#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aggar/wold.hpp"

namespace aggar {

/// Largest k for which every s(k, j) fits in a signed 64-bit integer with headroom.
inline constexpr std::size_t kStirlingExactLimit = 20;

/// Signed Stirling numbers of the first kind s(k, j), j = 0..k, for one row k.
/// Exact; throws DomainError for k > kStirlingExactLimit.
[[nodiscard]] std::vector<std::int64_t> stirling_first_kind_row(std::size_t k);

struct StirlingResult {
    ARCoefficients coeffs;
    /// I_k / k! with its sign, k = 0..K (index 0 unused).
    std::vector<double> scaled_integrals;
    /// Rows k <= exact_through were computed in exact rational arithmetic.
    std::size_t exact_through = 0;
    bool fallback = false;
    std::string notice;
};

/// Uniform-case a_k = |I_k| / k! with I_k = int_0^1 x(x-1)...(x-k+1) dx, by
/// expanding the falling factorial into Stirling numbers. Exact for
/// k <= kStirlingExactLimit, scaled floating point beyond (with a notice).
[[nodiscard]] StirlingResult uniform_ar_stirling(std::size_t K);

}  // namespace aggar
