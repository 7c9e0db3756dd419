#include "aggar/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aggar/errors.hpp"
#include "aggar/tolerances.hpp"

namespace aggar {
namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double aitken(double x0, double x1, double x2) {
    const double d1 = x1 - x0;
    const double d2 = x2 - x1;
    const double denom = d2 - d1;
    if (d2 == 0.0 || denom == 0.0) return x2;
    return x2 - d2 * d2 / denom;
}

Channel persistence_channel(MemoryClass mc, double a1) {
    Channel c{"persistence", true, true, ""};
    const bool long_mem = mc == MemoryClass::long_memory;
    c.agrees = long_mem == (a1 == 1.0) && a1 >= 0.0 && a1 <= 1.0;
    c.detail = "a(1) = " + fmt(a1) + ", class " + std::string(to_string(mc));
    return c;
}

Channel abel_channel(const DistributionSpec& spec, MemoryClass mc, double a1, std::optional<AbelResult>& out) {
    Channel c{"abel", true, true, ""};
    try {
        out = extrapolate_abel(abel_table(spec), mc);
    } catch (const ExtrapolationError& e) {
        c.agrees = false;
        c.detail = e.what();
        return c;
    }
    const auto& t = out->table;
    if (mc == MemoryClass::short_memory) {
        const double err = std::abs(out->estimate - a1);
        c.agrees = err <= tol::kAbelShortMemory;
        c.detail = "extrapolated " + fmt(out->estimate) + ", |error| " + fmt(err);
    } else {
        bool increasing = true;
        for (std::size_t i = 1; i < t.size(); ++i) increasing = increasing && t[i].a > t[i - 1].a;
        c.agrees = increasing && t.back().a < 1.0;
        c.detail = "raw a(r_24) = " + fmt(t.back().a) + (increasing ? ", increasing" : ", not increasing");
    }
    return c;
}

Channel fatou_channel(const DistributionSpec& spec, MemoryClass mc, const std::vector<AbelRow>& t) {
    Channel c{"fatou", true, true, ""};
    if (t.size() < 6) {
        c.available = false;
        c.detail = "no Abel table";
        return c;
    }
    const std::size_t n = t.size();
    if (mc == MemoryClass::short_memory) {
        const double target = mean_inverse_gap(spec).value - 1.0;
        const double est = aitken(t[n - 3].m, t[n - 2].m, t[n - 1].m);
        const double rel = std::abs(est - target) / std::max(1.0, std::abs(target));
        c.agrees = rel <= tol::kFatouShortMemory;
        c.detail = "m(r) -> " + fmt(est) + " vs sum u_k = " + fmt(target);
    } else {
        const double late = t[n - 1].m - t[n - 2].m;
        const double early = t[n - 6].m - t[n - 7].m;
        const double ratio = early > 0.0 ? late / early : 0.0;
        c.agrees = ratio >= tol::kFatouGrowthRatio && late > 0.0;
        c.detail = "increment ratio j=24/j=19: " + fmt(ratio);
    }
    return c;
}

Channel partial_sum_channel(MemoryClass mc, double a1, const std::vector<TruncationGap>& gaps) {
    Channel c{"partial_sums", true, true, ""};
    bool below_ceiling = true;
    for (const auto& g : gaps) below_ceiling = below_ceiling && g.partial_sum <= 1.0 + tol::kPartialSumCeiling;
    bool trend = true;
    if (mc == MemoryClass::long_memory) {
        for (std::size_t i = 1; i < gaps.size(); ++i) trend = trend && gaps[i].partial_sum > gaps[i - 1].partial_sum;
        trend = trend && gaps.back().partial_sum < 1.0;
        c.detail = "S_K increasing below 1: S_1000 = " + fmt(gaps.back().partial_sum);
    } else {
        for (std::size_t i = 1; i < gaps.size(); ++i) {
            const double prev = std::abs(a1 - gaps[i - 1].partial_sum);
            const double cur = std::abs(a1 - gaps[i].partial_sum);
            trend = trend && cur <= prev + 1e-14;
        }
        c.detail = "|a(1) - S_1000| = " + fmt(std::abs(a1 - gaps.back().partial_sum));
    }
    c.agrees = below_ceiling && trend;
    return c;
}

Channel matched_channel(const DistributionSpec& spec, const std::vector<TruncationGap>& gaps) {
    Channel c{"matched_resolution", true, true, ""};
    bool decreasing = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        decreasing = decreasing && gaps[i].discrepancy <= gaps[i - 1].discrepancy + 1e-14;
    }
    const double limit = matched_threshold(spec);
    c.agrees = decreasing && gaps.back().discrepancy <= limit;
    c.detail = "|S_1000 - a(0.999)| = " + fmt(gaps.back().discrepancy) + " (limit " + fmt(limit) + ")";
    return c;
}

Channel cesaro_channel(const std::vector<CesaroPoint>& ces) {
    Channel c{"cesaro", true, true, ""};
    for (std::size_t i = 1; i < ces.size(); ++i) {
        c.agrees = c.agrees && ces[i].value <= ces[i - 1].value;
    }
    c.detail = "(1/n) sum k|a_k| at n=1600: " + fmt(ces.back().value);
    return c;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::inconsistent: return "inconsistent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

HausdorffResult hausdorff_check(const MomentSequence& u, std::size_t J, std::size_t max_index) {
    const std::size_t top = std::min(u.order(), max_index);
    if (J > top) throw DomainError("hausdorff_check: J exceeds the available index range");
    HausdorffResult res;
    res.J = J;
    res.worst_value = std::numeric_limits<double>::infinity();
    // diff[k] holds (-1)^j (Delta^j u)_k
    std::vector<double> diff(u.u.begin(), u.u.begin() + static_cast<std::ptrdiff_t>(top + 1));
    for (std::size_t j = 0; j <= J; ++j) {
        for (std::size_t k = 0; k + j <= top; ++k) {
            if (diff[k] < res.worst_value) {
                res.worst_value = diff[k];
                res.worst_j = j;
                res.worst_k = k;
            }
        }
        for (std::size_t k = 0; k + j + 1 <= top; ++k) diff[k] = diff[k] - diff[k + 1];
    }
    res.passed = res.worst_value >= -tol::kHausdorff;
    return res;
}

TruncationGap truncation_gap(const DistributionSpec& spec, const ARCoefficients& a, std::size_t K) {
    if (K < 10) throw DomainError("truncation_gap: K must be >= 10");
    if (K > a.order()) throw DomainError("truncation_gap: coefficients do not reach order K");
    TruncationGap g;
    g.K = K;
    g.partial_sum = a.partial_sums[K];
    g.gap_to_one = 1.0 - g.partial_sum;
    try {
        g.gap_to_persistence = persistence(spec) - g.partial_sum;
    } catch (const IndeterminateError&) {
        g.gap_to_persistence.reset();
    }
    const double m = m_real(spec, 1.0 / static_cast<double>(K));
    g.abel_at_matched_r = m / (1.0 + m);
    g.discrepancy = std::abs(g.partial_sum - g.abel_at_matched_r);
    return g;
}

TruncationGap truncation_gap(const DistributionSpec& spec, std::size_t K) {
    if (K < 10) throw DomainError("truncation_gap: K must be >= 10");
    return truncation_gap(spec, ar_from_ma(moments(spec, K)), K);
}

double matched_threshold(const DistributionSpec& spec) {
    if (spec.family() == Family::uniform) return tol::kMatchedUniform;
    if (const auto* b = std::get_if<BetaLaw>(&spec.law()); b && b->q <= 1.0) return tol::kMatchedBetaLong;
    return tol::kMatchedGeneral;
}

MemoryReport memory_report(const DistributionSpec& spec, std::size_t K) {
    MemoryReport rep;
    rep.spec = spec.describe();
    K = std::max(K, tol::kReportMinOrder);

    const MomentSequence u = moments(spec, K);
    rep.hausdorff = hausdorff_check(u, tol::kHausdorffDepth, tol::kHausdorffMaxIndex);
    const ARCoefficients a = ar_from_ma(u);
    for (std::size_t n : tol::kCesaroOrders) rep.cesaro.push_back({n, cesaro_weighted(a, n)});

    MemoryClass mc{};
    try {
        mc = memory_class(spec);
        rep.memory = mc;
        rep.persistence = persistence(spec);
    } catch (const IndeterminateError& e) {
        rep.channels.push_back({"persistence", false, true, e.what()});
        rep.channels.push_back({"abel", false, true, "memory class unresolved"});
        rep.channels.push_back({"fatou", false, true, "memory class unresolved"});
        rep.channels.push_back({"partial_sums", false, true, "memory class unresolved"});
        rep.channels.push_back({"matched_resolution", false, true, "memory class unresolved"});
        rep.channels.push_back(cesaro_channel(rep.cesaro));
        rep.channels.push_back({"hausdorff", true, rep.hausdorff.passed, ""});
        rep.verdict = Verdict::inconclusive;
        return rep;
    }
    const double a1 = *rep.persistence;
    for (std::size_t k : tol::kReportOrders) rep.partial_sums.push_back(truncation_gap(spec, a, k));

    rep.channels.push_back(persistence_channel(mc, a1));
    rep.channels.push_back(abel_channel(spec, mc, a1, rep.abel));
    rep.channels.push_back(fatou_channel(spec, mc, rep.abel ? rep.abel->table : std::vector<AbelRow>{}));
    rep.channels.push_back(partial_sum_channel(mc, a1, rep.partial_sums));
    rep.channels.push_back(matched_channel(spec, rep.partial_sums));
    rep.channels.push_back(cesaro_channel(rep.cesaro));
    rep.channels.push_back({"hausdorff", true, rep.hausdorff.passed,
                            "worst " + fmt(rep.hausdorff.worst_value) + " at j=" +
                                std::to_string(rep.hausdorff.worst_j) + ", k=" +
                                std::to_string(rep.hausdorff.worst_k)});

    bool all = true;
    for (const auto& c : rep.channels) all = all && (!c.available || c.agrees);
    rep.verdict = all ? Verdict::consistent : Verdict::inconsistent;
    return rep;
}

}  // namespace aggar
