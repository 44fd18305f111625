#pragma once

#include <sizesched/allocation.hpp>
#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace sizesched {

/// One job in the emulated PS system run over estimated sizes.
struct VirtualJob {
    JobId job{};
    double remaining = 0.0; // virtual remaining work
    bool active = true;     // still unfinished in the real system
};

/// Bookkeeping of the FSP family: the virtual PS queue ordered by virtual
/// remaining work, the late set (jobs done in the virtual system but not in
/// the real one, in the order they became late) and the virtual clock.
struct FspePsState {
    std::deque<VirtualJob> virtual_queue;
    std::vector<JobId> late;
    Time virtual_time = 0.0;
};

/// How late jobs are served.
enum class FspeMode {
    fspe,    // one at a time in the order they became late, never preempted
    fspe_ps, // all late jobs together in PS fashion
};

inline constexpr double kVirtualCompletionTolerance = 1e-6;

/// Bring the virtual system forward to `s`: every job in it loses an
/// equal share of the elapsed time.
inline void fspe_update_virtual_time(FspePsState& state, Time s) {
    if (s < state.virtual_time - 1e-9) {
        throw ContractViolation("virtual time cannot move backwards (t=" + std::to_string(state.virtual_time) + ", s=" + std::to_string(s) + ")");
    }
    s = std::max(s, state.virtual_time);
    if (!state.virtual_queue.empty()) {
        const double decrement = (s - state.virtual_time) / static_cast<double>(state.virtual_queue.size());
        for (auto& v : state.virtual_queue) v.remaining -= decrement;
    }
    state.virtual_time = s;
}

/// Job `j` with estimated size `w` arrives at `s`. Equal estimates queue
/// behind existing ones.
inline void fspe_job_arrival(FspePsState& state, Time s, JobId j, double w) {
    fspe_update_virtual_time(state, s);
    auto& q = state.virtual_queue;
    const auto pos = std::upper_bound(q.begin(), q.end(), w, [](double key, const VirtualJob& v) { return key < v.remaining; });
    q.insert(pos, VirtualJob{j, w, true});
}

/// Instant at which the head of the virtual queue finishes, if any.
[[nodiscard]] inline std::optional<Time> fspe_next_virtual_completion(const FspePsState& state) {
    if (state.virtual_queue.empty()) return std::nullopt;
    const double w0 = state.virtual_queue.front().remaining;
    return state.virtual_time + std::max(0.0, w0) * static_cast<double>(state.virtual_queue.size());
}

/// The head of the virtual queue completes at `s`. If it is still running
/// in the real system it becomes late.
inline void fspe_virtual_completion(FspePsState& state, Time s) {
    if (state.virtual_queue.empty()) throw ContractViolation("virtual completion with an empty virtual queue");
    fspe_update_virtual_time(state, s);
    const VirtualJob head = state.virtual_queue.front();
    if (std::abs(head.remaining) > kVirtualCompletionTolerance) {
        throw InternalError("virtual head of job " + std::to_string(index(head.job)) + " has " + std::to_string(head.remaining) +
                            " work left at its completion time");
    }
    if (head.active) state.late.push_back(head.job);
    state.virtual_queue.pop_front();
}

/// Job `j` finishes in the real system. A job still in the virtual queue
/// stays there, inactive, so the virtual PS keeps its rate; a late job
/// leaves the late set.
inline void fspe_real_completion(FspePsState& state, JobId j) {
    for (auto& v : state.virtual_queue) {
        if (v.job == j && v.active) {
            v.active = false;
            return;
        }
    }
    if (const auto it = std::find(state.late.begin(), state.late.end(), j); it != state.late.end()) {
        state.late.erase(it);
        return;
    }
    throw ContractViolation("real completion of job " + std::to_string(index(j)) + " which is neither queued nor late");
}

/// Real-system allocation. Late jobs take precedence; otherwise the active
/// job closest to virtual completion runs alone.
[[nodiscard]] inline Allocation fspe_process_job(const FspePsState& state, FspeMode mode) {
    if (!state.late.empty()) {
        if (mode == FspeMode::fspe_ps) return Allocation::equal(state.late);
        return Allocation::single(state.late.front());
    }
    for (const auto& v : state.virtual_queue) {
        if (v.active) return Allocation::single(v.job);
    }
    return {};
}

/// FSPE (late jobs served one by one) and FSPE+PS (late jobs share the
/// server). Identical when no job is ever late.
class FspePolicy {
public:
    explicit FspePolicy(FspeMode mode) : mode_(mode) {}

    [[nodiscard]] bool exact_sizes() const noexcept { return false; }

    void on_arrival(Time t, JobId job, double estimate) { fspe_job_arrival(state_, t, job, estimate); }
    void on_real_completion(Time, JobId job) { fspe_real_completion(state_, job); }
    [[nodiscard]] std::optional<Time> next_internal_event() const { return fspe_next_virtual_completion(state_); }
    void on_internal_event(Time t) { fspe_virtual_completion(state_, t); }
    [[nodiscard]] Allocation allocate() const { return fspe_process_job(state_, mode_); }

    [[nodiscard]] FspeMode mode() const noexcept { return mode_; }
    [[nodiscard]] const FspePsState& state() const noexcept { return state_; }

private:
    FspePsState state_;
    FspeMode mode_;
};

} // namespace sizesched
