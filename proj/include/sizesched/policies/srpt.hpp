#pragma once

#include <sizesched/allocation.hpp>
#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <algorithm>
#include <compare>
#include <optional>
#include <set>

namespace sizesched {

/// A queued job keyed by (remaining, arrival, id). For SRPTE the remaining
/// work is the estimate minus attained service and can drop to zero or
/// below, at which point the job is late.
struct SrpteEntry {
    double remaining = 0.0;
    Time arrival = 0.0;
    JobId id{};

    friend auto operator<=>(const SrpteEntry&, const SrpteEntry&) = default;
};

struct SrpteState {
    std::set<SrpteEntry> queue;
};

/// Smallest remaining (possibly negative) gets the server; ties go to the
/// earlier arrival, then the lower id.
[[nodiscard]] inline Allocation srpte_allocate(const SrpteState& state) {
    if (state.queue.empty()) return {};
    return Allocation::single(state.queue.begin()->id);
}

/// SRPT over true remaining sizes; same ordering as SRPTE.
[[nodiscard]] inline Allocation srpt_allocate(const SrpteState& true_remaining) { return srpte_allocate(true_remaining); }

/// Shortest remaining processing time on whatever size the engine reveals.
/// With `exact` the engine hands over true sizes and this is SRPT; without
/// it, estimates, and this is SRPTE. A late SRPTE job has non-positive
/// remaining estimate and so keeps the server against any fresh arrival.
class SrptePolicy {
public:
    explicit SrptePolicy(bool exact = false) : exact_(exact) {}

    [[nodiscard]] bool exact_sizes() const noexcept { return exact_; }

    void on_arrival(Time t, JobId job, double size) {
        advance_to(t);
        state_.queue.insert({size, t, job});
    }

    void on_real_completion(Time t, JobId job) {
        advance_to(t);
        auto it = std::find_if(state_.queue.begin(), state_.queue.end(), [job](const SrpteEntry& e) { return e.id == job; });
        if (it == state_.queue.end()) throw ContractViolation("srpt: completion of unknown job");
        state_.queue.erase(it);
    }

    [[nodiscard]] std::optional<Time> next_internal_event() const { return std::nullopt; }
    void on_internal_event(Time t) { advance_to(t); }

    [[nodiscard]] Allocation allocate() const { return srpte_allocate(state_); }

    [[nodiscard]] const SrpteState& state() const noexcept { return state_; }

private:
    // Only the head is ever served, and lowering the minimum keeps it the
    // minimum, so re-keying the head preserves the order.
    void advance_to(Time t) {
        const Time dt = t - since_;
        if (dt > 0.0 && !state_.queue.empty()) {
            auto node = state_.queue.extract(state_.queue.begin());
            node.value().remaining -= dt;
            state_.queue.insert(std::move(node));
        }
        since_ = std::max(since_, t);
    }

    SrpteState state_;
    Time since_ = 0.0;
    bool exact_;
};

class SrptPolicy : public SrptePolicy {
public:
    SrptPolicy() : SrptePolicy(true) {}
};

} // namespace sizesched
