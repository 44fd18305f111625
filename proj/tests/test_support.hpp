#pragma once

#include <sizesched/engine.hpp>
#include <sizesched/job.hpp>
#include <sizesched/random.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace sizesched::testing {

struct JobInput {
    Time arrival;
    double size;
    double estimate;
};

inline Workload make_workload(const std::vector<JobInput>& in) {
    Workload w{{}, TraceSource{"test", 0.0}};
    for (std::size_t i = 0; i < in.size(); ++i) w.jobs.push_back({job_id(i), in[i].arrival, in[i].size, in[i].estimate});
    return w;
}

inline Workload exact_workload(const std::vector<std::pair<Time, double>>& in) {
    std::vector<JobInput> jobs;
    for (auto [a, s] : in) jobs.push_back({a, s, s});
    return make_workload(jobs);
}

/// Up to `max_jobs` jobs, sizes in [0.5, 5], arrivals in [0, 8] (some
/// simultaneous), estimates off by a log-normal factor of the given sigma.
inline Workload random_small_workload(Rng& rng, std::size_t max_jobs = 6, double sigma = 1.0) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_open() * static_cast<double>(max_jobs));
    std::vector<Time> arrivals;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform_open();
        arrivals.push_back(u < 0.15 ? 0.0 : 8.0 * rng.uniform_open());
    }
    std::sort(arrivals.begin(), arrivals.end());
    std::vector<JobInput> jobs;
    for (std::size_t i = 0; i < n; ++i) {
        const double size = 0.5 + 4.5 * rng.uniform_open();
        const double estimate = size * std::exp(sigma * rng.standard_normal());
        jobs.push_back({arrivals[i], size, estimate});
    }
    return make_workload(jobs);
}

inline std::map<std::size_t, Time> completions_by_id(const std::vector<CompletionRecord>& records) {
    std::map<std::size_t, Time> out;
    for (const auto& r : records) out[index(r.id)] = r.completion;
    return out;
}

/// Integrates service per job and checks work conservation and event order.
struct AuditingObserver {
    std::vector<double> served;
    std::vector<std::string> failures;
    Time last_event = 0.0;
    std::size_t in_system = 0;

    explicit AuditingObserver(std::size_t njobs) : served(njobs, 0.0) {}

    void on_segment(Time from, Time to, const Allocation& alloc) {
        for (const auto& s : alloc.shares) served[index(s.job)] += s.fraction * (to - from);
        if (to > from && in_system > 0 && std::abs(alloc.total() - 1.0) > 1e-9) {
            failures.push_back("idle capacity with " + std::to_string(in_system) + " jobs at t=" + std::to_string(from));
        }
    }

    void on_event(const EngineEvent& e, const Allocation&) {
        if (e.time < last_event) failures.push_back("event time went backwards at t=" + std::to_string(e.time));
        last_event = e.time;
        if (e.kind == EventKind::arrival) ++in_system;
        if (e.kind == EventKind::real_completion) --in_system;
    }
};

} // namespace sizesched::testing
