#pragma once

#include <sizesched/allocation.hpp>
#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <optional>
#include <set>

namespace sizesched {

/// Earliest-arrived job gets the whole server. Ids are assigned in arrival
/// order, so the smallest id present is the earliest arrival.
[[nodiscard]] inline Allocation fifo_allocate(const std::set<JobId>& present) {
    if (present.empty()) return {};
    return Allocation::single(*present.begin());
}

class FifoPolicy {
public:
    [[nodiscard]] bool exact_sizes() const noexcept { return false; }

    void on_arrival(Time, JobId job, double) { present_.insert(job); }

    void on_real_completion(Time, JobId job) {
        if (present_.erase(job) == 0) throw ContractViolation("fifo: completion of unknown job");
    }

    [[nodiscard]] std::optional<Time> next_internal_event() const { return std::nullopt; }
    void on_internal_event(Time) {}

    [[nodiscard]] Allocation allocate() const { return fifo_allocate(present_); }

private:
    std::set<JobId> present_;
};

} // namespace sizesched
