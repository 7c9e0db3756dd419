#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aggar/complexfn.hpp"
#include "aggar/distribution.hpp"
#include "aggar/moments.hpp"
#include "aggar/wold.hpp"

namespace aggar {

struct HausdorffResult {
    bool passed = true;
    std::size_t J = 0;
    /// Smallest (-1)^j (Delta^j u)_k seen and where.
    double worst_value = 0.0;
    std::size_t worst_j = 0;
    std::size_t worst_k = 0;
};

/// (-1)^j (Delta^j u)_k >= -1e-10 for j = 0..J and j + k <= min(K, max_index).
[[nodiscard]] HausdorffResult hausdorff_check(const MomentSequence& u, std::size_t J,
                                              std::size_t max_index = 20);

struct TruncationGap {
    std::size_t K = 0;
    double partial_sum = 0.0;
    /// 1 - S_K.
    double gap_to_one = 0.0;
    /// a(1) - S_K; empty when a(1) is unresolved.
    std::optional<double> gap_to_persistence;
    /// a(1 - 1/K).
    double abel_at_matched_r = 0.0;
    /// |S_K - a(1 - 1/K)|.
    double discrepancy = 0.0;
};

[[nodiscard]] TruncationGap truncation_gap(const DistributionSpec& spec, std::size_t K);
/// Same, reusing coefficients already computed to order >= K.
[[nodiscard]] TruncationGap truncation_gap(const DistributionSpec& spec, const ARCoefficients& a, std::size_t K);

struct Channel {
    std::string name;
    bool available = true;
    bool agrees = true;
    std::string detail;
};

struct CesaroPoint {
    std::size_t n;
    double value;
};

enum class Verdict { consistent, inconsistent, inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v);

struct MemoryReport {
    std::string spec;
    std::optional<MemoryClass> memory;
    std::optional<double> persistence;
    std::vector<TruncationGap> partial_sums;
    std::optional<AbelResult> abel;
    std::vector<CesaroPoint> cesaro;
    HausdorffResult hausdorff;
    std::vector<Channel> channels;
    Verdict verdict = Verdict::inconclusive;

    [[nodiscard]] bool consistent() const { return verdict == Verdict::consistent; }
};

/// All evidence channels for one spec. K is raised to cover the largest
/// Cesaro order. Unresolved generic densities give an inconclusive verdict.
[[nodiscard]] MemoryReport memory_report(const DistributionSpec& spec, std::size_t K = 2000);

/// Matched-resolution threshold for |S_1000 - a(0.999)| for this spec.
[[nodiscard]] double matched_threshold(const DistributionSpec& spec);

}  // namespace aggar
