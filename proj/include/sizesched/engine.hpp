#pragma once

#include <sizesched/allocation.hpp>
#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace sizesched {

/// Absolute tolerance used when comparing event times.
inline constexpr Time kTimeTolerance = 1e-9;

/// What the engine needs from a scheduling discipline.
///
/// A policy only ever learns a job's estimate (or its exact size when
/// exact_sizes() is true, which is how SRPT is modelled); the engine alone
/// tracks true remaining work. allocate() is called after every dispatched
/// event and its result holds until the next one.
template <typename P>
concept SchedulingPolicy = requires(P p, const P cp, Time t, JobId j, double estimate) {
    { cp.exact_sizes() } -> std::convertible_to<bool>;
    p.on_arrival(t, j, estimate);
    p.on_real_completion(t, j);
    { cp.next_internal_event() } -> std::same_as<std::optional<Time>>;
    p.on_internal_event(t);
    { p.allocate() } -> std::same_as<Allocation>;
};

enum class EventKind { arrival, real_completion, policy_internal };

struct EngineEvent {
    EventKind kind{};
    Time time = 0.0;
    std::optional<JobId> job;
};

/// Hooks for tests and tracing. on_segment reports each constant-allocation
/// interval [from, to]; on_event reports each dispatched event after the
/// policy has reacted to it.
struct NullObserver {
    void on_segment(Time, Time, const Allocation&) {}
    void on_event(const EngineEvent&, const Allocation&) {}
};

struct RealCompletion {
    JobId job{};
    Time time = 0.0;
};

/// Earliest real completion under `alloc`, ties to the lowest job id.
/// `remaining` is indexed by job ordinal.
[[nodiscard]] inline std::optional<RealCompletion> next_real_completion(const Allocation& alloc, std::span<const double> remaining,
                                                                        Time now) {
    std::optional<RealCompletion> best;
    for (const auto& s : alloc.shares) {
        if (index(s.job) >= remaining.size()) {
            throw InternalError("allocated job " + std::to_string(index(s.job)) + " has no remaining-work entry");
        }
        const Time t = now + std::max(0.0, remaining[index(s.job)]) / s.fraction;
        if (!best || t < best->time || (t == best->time && s.job < best->job)) best = RealCompletion{s.job, t};
    }
    return best;
}

/// Serve every allocated job for [now, next].
inline void advance(Time now, Time next, const Allocation& alloc, std::span<double> remaining) {
    const Time dt = next - now;
    if (dt <= 0.0) return;
    for (const auto& s : alloc.shares) {
        double& r = remaining[index(s.job)];
        r = std::max(0.0, r - s.fraction * dt);
    }
}

namespace detail {

inline std::string describe(const EngineEvent& e) {
    std::ostringstream os;
    os << (e.kind == EventKind::arrival ? "arrival" : e.kind == EventKind::real_completion ? "real completion" : "internal event");
    if (e.job) os << " of job " << index(*e.job);
    os << " at t=" << e.time;
    return os.str();
}

inline void check_allocation(const Allocation& alloc, const std::vector<char>& present, std::vector<std::size_t>& stamp,
                             std::size_t round, const EngineEvent& after) {
    double total = 0.0;
    for (const auto& s : alloc.shares) {
        const auto i = index(s.job);
        auto fail = [&](const std::string& why) {
            throw ContractViolation("invalid allocation after " + describe(after) + ": " + why);
        };
        if (i >= present.size() || !present[i]) fail("job " + std::to_string(i) + " is not in the system");
        if (!(s.fraction > 0.0 && s.fraction <= 1.0 + kTimeTolerance)) fail("fraction out of (0, 1] for job " + std::to_string(i));
        if (stamp[i] == round) fail("job " + std::to_string(i) + " listed twice");
        stamp[i] = round;
        total += s.fraction;
    }
    if (total > 1.0 + 1e-9) throw ContractViolation("invalid allocation after " + describe(after) + ": fractions sum above 1");
}

} // namespace detail

/// Run `workload` to completion under `policy`. Records are returned in
/// completion order.
///
/// Events sharing a timestamp (within kTimeTolerance) are dispatched as
/// real completion, then policy-internal, then arrival, so a departing job
/// never shares the server with a same-instant arrival.
template <SchedulingPolicy P, typename Observer = NullObserver>
[[nodiscard]] std::vector<CompletionRecord> run_simulation(const Workload& workload, P& policy, Observer&& observer = {}) {
    const auto& jobs = workload.jobs;
    const std::size_t n = jobs.size();
    constexpr Time kNever = std::numeric_limits<Time>::infinity();

    for (std::size_t i = 0; i < n; ++i) {
        const auto& j = jobs[i];
        if (index(j.id) != i) throw InvalidParameter("job ids must be consecutive in arrival order");
        if (!(j.size > 0.0 && j.estimate > 0.0)) throw InvalidParameter("job " + std::to_string(i) + " has a non-positive size or estimate");
        if (!(j.arrival >= 0.0) || (i > 0 && j.arrival < jobs[i - 1].arrival)) {
            throw InvalidParameter("arrivals must be non-negative and sorted");
        }
    }

    std::vector<double> remaining(n);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = jobs[i].size;
    std::vector<char> present(n, 0);
    std::vector<std::size_t> stamp(n, 0);
    std::vector<CompletionRecord> records;
    records.reserve(n);

    const bool exact = policy.exact_sizes();
    Allocation alloc;
    Time now = 0.0;
    std::size_t next_arrival = 0;
    std::size_t round = 0;

    while (records.size() < n) {
        const Time t_arrival = next_arrival < n ? jobs[next_arrival].arrival : kNever;
        const auto completion = next_real_completion(alloc, remaining, now);
        const Time t_completion = completion ? completion->time : kNever;
        const Time t_internal = policy.next_internal_event().value_or(kNever);
        const Time earliest = std::min({t_arrival, t_completion, t_internal});
        if (earliest == kNever) {
            throw ContractViolation("policy left the server idle with " + std::to_string(n - records.size()) +
                                    " unfinished jobs and no pending event at t=" + std::to_string(now));
        }

        EngineEvent event;
        if (t_completion <= earliest + kTimeTolerance) {
            event = {EventKind::real_completion, t_completion, completion->job};
        } else if (t_internal <= earliest + kTimeTolerance) {
            event = {EventKind::policy_internal, t_internal, std::nullopt};
        } else {
            event = {EventKind::arrival, t_arrival, jobs[next_arrival].id};
        }
        event.time = std::max(now, event.time);

        advance(now, event.time, alloc, remaining);
        observer.on_segment(now, event.time, alloc);
        now = event.time;

        switch (event.kind) {
        case EventKind::real_completion: {
            const auto i = index(*event.job);
            remaining[i] = 0.0;
            present[i] = 0;
            const auto& j = jobs[i];
            records.push_back({j.id, j.arrival, j.size, j.estimate, now});
            policy.on_real_completion(now, j.id);
            break;
        }
        case EventKind::policy_internal:
            policy.on_internal_event(now);
            break;
        case EventKind::arrival: {
            const auto& j = jobs[next_arrival++];
            present[index(j.id)] = 1;
            policy.on_arrival(now, j.id, exact ? j.size : j.estimate);
            break;
        }
        }

        alloc = policy.allocate();
        detail::check_allocation(alloc, present, stamp, ++round, event);
        observer.on_event(event, alloc);
    }
    return records;
}

} // namespace sizesched
