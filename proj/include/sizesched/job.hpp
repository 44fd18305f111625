#pragma once

#include <sizesched/error.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace sizesched {

/// Simulated time and job sizes share one unit: the server processes one unit of work per unit of time.
using Time = double;

/// Ordinal of a job within its workload, assigned in arrival order starting at 0.
enum class JobId : std::uint32_t {};

[[nodiscard]] constexpr std::size_t index(JobId id) noexcept { return static_cast<std::size_t>(id); }
[[nodiscard]] constexpr JobId job_id(std::size_t i) noexcept { return static_cast<JobId>(i); }

struct JobSpec {
    JobId id{};
    Time arrival = 0.0;
    double size = 0.0;
    double estimate = 0.0;
};

struct WeibullSizes {
    double shape = 0.25;
};

/// Lomax (Pareto type II anchored at zero).
struct ParetoSizes {
    double alpha = 2.0;
};

using SizeDistribution = std::variant<WeibullSizes, ParetoSizes>;

struct WorkloadSpec {
    std::size_t njobs = 10'000;
    SizeDistribution size_dist = WeibullSizes{};
    double timeshape = 1.0;
    double load = 0.9;
    double sigma = 0.5;
    std::uint64_t seed = 0;
};

inline void validate(const WorkloadSpec& spec) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (const auto* w = std::get_if<WeibullSizes>(&spec.size_dist); w && !positive(w->shape)) {
        throw InvalidParameter("size shape must be positive");
    }
    if (const auto* p = std::get_if<ParetoSizes>(&spec.size_dist); p && !positive(p->alpha)) {
        throw InvalidParameter("pareto alpha must be positive");
    }
    if (!positive(spec.timeshape)) throw InvalidParameter("timeshape must be positive");
    if (!(spec.load > 0.0 && spec.load <= 1.0)) throw InvalidParameter("load must lie in (0, 1]");
    if (!(std::isfinite(spec.sigma) && spec.sigma >= 0.0)) throw InvalidParameter("sigma must be non-negative");
}

struct TraceSource {
    std::string path;
    double target_load = 0.9;
};

struct Workload {
    std::vector<JobSpec> jobs;
    std::variant<WorkloadSpec, TraceSource> provenance;
};

/// Outcome of one job in a simulation run.
struct CompletionRecord {
    JobId id{};
    Time arrival = 0.0;
    double size = 0.0;
    double estimate = 0.0;
    Time completion = 0.0;

    [[nodiscard]] Time sojourn() const noexcept { return completion - arrival; }
    [[nodiscard]] double slowdown() const noexcept { return sojourn() / size; }
};

} // namespace sizesched
