#pragma once

#include <cstddef>

// Thresholds used by the memory diagnostics. Values for long-memory families
// come from closed-form or high-order reference evaluations made before the
// tests were frozen; each note records where the number came from.

namespace aggar::tol {

/// Closed-form identities.
inline constexpr double kClosedForm = 1e-12;
/// Quadrature-backed values.
inline constexpr double kQuadrature = 1e-9;
/// Forward-difference slack for the Hausdorff check.
inline constexpr double kHausdorff = 1e-10;
/// Partial sums may exceed 1 only by rounding.
inline constexpr double kPartialSumCeiling = 1e-9;

/// Short memory: Aitken-accelerated Abel value against the closed-form a(1).
/// Beta(p, q), p in {0.5, 1, 2, 5}, q in {1.5, 2, 3}: worst 5.4e-8, at Beta(5, 1.5).
inline constexpr double kAbelShortMemory = 1e-5;
/// Short memory: relative error of the accelerated m(r_j) against E[1/(1-phi)] - 1.
inline constexpr double kFatouShortMemory = 1e-4;
/// Long memory: increment of m(r_j) at j = 24 over that at j = 19. Divergent
/// m keeps increments of constant size (log growth, Uniform) or growing ones
/// (Beta q < 1); a summable tail would shrink them geometrically.
inline constexpr double kFatouGrowthRatio = 2.0 / 3.0;

/// Orders at which partial sums are reported.
inline constexpr std::size_t kReportOrders[3] = {50, 200, 1000};
/// Orders for the Cesaro means (1/n) sum k |a_k|.
inline constexpr std::size_t kCesaroOrders[3] = {100, 400, 1600};
/// Moment order used by memory_report; covers the largest Cesaro order.
inline constexpr std::size_t kReportMinOrder = 2000;

/// |S_K - a(1 - 1/K)| at K = 1000.
/// Uniform: S_1000 = 0.8709, a(0.999) = 0.8554 from 1 + r/log(1 - r), so 0.0155.
inline constexpr double kMatchedUniform = 0.02;
/// Beta with q <= 1: reference runs over p in {0.5, 1, 2, 5}, q in {0.5, 0.8, 1}
/// peak at 0.023 for Beta(0.5, 0.8).
inline constexpr double kMatchedBetaLong = 0.03;
/// Everything else (short memory, polynomial, generic).
inline constexpr double kMatchedGeneral = 0.05;

/// Hausdorff check depth in reports.
inline constexpr std::size_t kHausdorffDepth = 10;
inline constexpr std::size_t kHausdorffMaxIndex = 20;

}  // namespace aggar::tol
