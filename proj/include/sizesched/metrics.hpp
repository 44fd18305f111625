#pragma once

#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sizesched {

/// Mean sojourn time (MST).
[[nodiscard]] inline double mean_sojourn(std::span<const CompletionRecord> records) {
    if (records.empty()) throw InvalidParameter("mean sojourn of an empty run");
    double sum = 0.0;
    for (const auto& r : records) sum += r.sojourn();
    return sum / static_cast<double>(records.size());
}

/// Sojourn over size for every job, in input order.
[[nodiscard]] inline std::vector<double> slowdowns(std::span<const CompletionRecord> records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.slowdown());
    return out;
}

struct SlowdownBin {
    double mean_size = 0.0;
    double mean_slowdown = 0.0;
    std::size_t count = 0;
};

/// Mean slowdown conditioned on size, estimated over equal-count size classes.
struct BinnedSlowdown {
    std::vector<SlowdownBin> bins;
};

/// Sort jobs by size and cut them into `nbins` contiguous classes whose
/// counts differ by at most one; the first n % nbins classes hold the extra job.
[[nodiscard]] inline BinnedSlowdown mean_conditional_slowdown(std::span<const CompletionRecord> records, std::size_t nbins = 100) {
    if (nbins == 0) throw InvalidParameter("need at least one bin");
    if (records.size() < nbins) {
        throw InvalidParameter("only " + std::to_string(records.size()) + " jobs for " + std::to_string(nbins) +
                               " bins; use fewer bins");
    }
    std::vector<std::pair<double, double>> by_size; // (size, slowdown)
    by_size.reserve(records.size());
    for (const auto& r : records) by_size.emplace_back(r.size, r.slowdown());
    std::stable_sort(by_size.begin(), by_size.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    const std::size_t base = by_size.size() / nbins;
    const std::size_t extra = by_size.size() % nbins;
    BinnedSlowdown out;
    out.bins.reserve(nbins);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < nbins; ++b) {
        const std::size_t count = base + (b < extra ? 1 : 0);
        double size_sum = 0.0;
        double slowdown_sum = 0.0;
        for (std::size_t i = pos; i < pos + count; ++i) {
            size_sum += by_size[i].first;
            slowdown_sum += by_size[i].second;
        }
        out.bins.push_back({size_sum / static_cast<double>(count), slowdown_sum / static_cast<double>(count), count});
        pos += count;
    }
    return out;
}

/// Empirical distribution of a sample: the i-th smallest value (1-based)
/// carries cumulative fraction i/n.
class EmpiricalCdf {
public:
    struct Point {
        double value;
        double fraction;
    };

    explicit EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) { std::sort(sorted_.begin(), sorted_.end()); }

    [[nodiscard]] std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(sorted_.size());
        const auto n = static_cast<double>(sorted_.size());
        for (std::size_t i = 0; i < sorted_.size(); ++i) out.push_back({sorted_[i], static_cast<double>(i + 1) / n});
        return out;
    }

    /// Fraction of values strictly greater than `threshold`.
    [[nodiscard]] double fraction_above(double threshold) const {
        if (sorted_.empty()) return 0.0;
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), threshold);
        return static_cast<double>(sorted_.end() - it) / static_cast<double>(sorted_.size());
    }

    [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }
    [[nodiscard]] bool empty() const noexcept { return sorted_.empty(); }

private:
    std::vector<double> sorted_;
};

[[nodiscard]] inline EmpiricalCdf empirical_cdf(std::vector<double> values) { return EmpiricalCdf(std::move(values)); }

/// Sample Pearson correlation on raw values.
[[nodiscard]] inline double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw InvalidParameter("correlation needs paired samples");
    if (xs.size() < 2) throw InvalidParameter("correlation needs at least two points");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw InvalidParameter("correlation undefined for zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct ConfidenceInterval {
    double mean = 0.0;
    double halfwidth = 0.0;
};

/// 95% interval by the normal approximation: mean +- 1.96 s / sqrt(n).
[[nodiscard]] inline ConfidenceInterval ci95(std::span<const double> samples) {
    if (samples.size() < 2) throw InvalidParameter("confidence interval needs at least two samples");
    const auto n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    return {mean, 1.96 * sd / std::sqrt(n)};
}

/// MST of `policy` over MST of `baseline`; both runs must cover the same jobs.
[[nodiscard]] inline double normalized_mst(std::span<const CompletionRecord> policy, std::span<const CompletionRecord> baseline) {
    auto ids = [](std::span<const CompletionRecord> rs) {
        std::vector<JobId> out;
        out.reserve(rs.size());
        for (const auto& r : rs) out.push_back(r.id);
        std::sort(out.begin(), out.end());
        return out;
    };
    if (ids(policy) != ids(baseline)) throw InvalidParameter("normalized MST needs runs over the same workload");
    return mean_sojourn(policy) / mean_sojourn(baseline);
}

struct RunSummary {
    std::string policy;
    double mst = 0.0;
    std::vector<double> slowdowns;
    std::size_t njobs = 0;
    std::variant<WorkloadSpec, TraceSource> provenance;
};

[[nodiscard]] inline RunSummary summarize(std::string policy, std::span<const CompletionRecord> records, const Workload& workload) {
    return {std::move(policy), mean_sojourn(records), slowdowns(records), records.size(), workload.provenance};
}

} // namespace sizesched
