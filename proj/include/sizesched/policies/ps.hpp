#pragma once

#include <sizesched/allocation.hpp>
#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace sizesched {

/// Processor sharing: each of the n present jobs is served at rate 1/n.
[[nodiscard]] inline Allocation ps_allocate(std::span<const JobId> present) {
    if (present.empty()) return {};
    return Allocation::equal(present);
}

class PsPolicy {
public:
    [[nodiscard]] bool exact_sizes() const noexcept { return false; }

    void on_arrival(Time, JobId job, double) {
        present_.insert(std::upper_bound(present_.begin(), present_.end(), job), job);
    }

    void on_real_completion(Time, JobId job) {
        const auto it = std::lower_bound(present_.begin(), present_.end(), job);
        if (it == present_.end() || *it != job) throw ContractViolation("ps: completion of unknown job");
        present_.erase(it);
    }

    [[nodiscard]] std::optional<Time> next_internal_event() const { return std::nullopt; }
    void on_internal_event(Time) {}

    [[nodiscard]] Allocation allocate() const { return ps_allocate(present_); }

private:
    std::vector<JobId> present_;
};

} // namespace sizesched
