#pragma once

#include <sizesched/allocation.hpp>
#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace sizesched {

/// Service attained so far by each present job.
struct LasState {
    std::map<JobId, double> attained;
};

namespace detail {

inline bool same_level(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

inline std::optional<double> next_level_above(const LasState& state, double level) {
    std::optional<double> next;
    for (const auto& [job, a] : state.attained) {
        if (a > level && !same_level(a, level) && (!next || a < *next)) next = a;
    }
    return next;
}

} // namespace detail

/// Jobs tied at the least attained service, in id order.
[[nodiscard]] inline std::vector<JobId> las_least_served(const LasState& state) {
    std::vector<JobId> tied;
    if (state.attained.empty()) return tied;
    double level = std::numeric_limits<double>::infinity();
    for (const auto& [job, a] : state.attained) level = std::min(level, a);
    for (const auto& [job, a] : state.attained) {
        if (detail::same_level(a, level)) tied.push_back(job);
    }
    return tied;
}

[[nodiscard]] inline Allocation las_allocate(const LasState& state) { return Allocation::equal(las_least_served(state)); }

/// When the rising tie set catches up with the next attained level, or
/// nothing if every present job is already in the tie set.
[[nodiscard]] inline std::optional<Time> las_next_internal_event(const LasState& state, const Allocation& alloc, Time now) {
    if (alloc.empty()) return std::nullopt;
    const double level = state.attained.at(alloc.shares.front().job);
    const auto next = detail::next_level_above(state, level);
    if (!next) return std::nullopt;
    return now + (*next - level) / alloc.shares.front().fraction;
}

/// Least attained service, with ties shared in PS fashion.
class LasPolicy {
public:
    [[nodiscard]] bool exact_sizes() const noexcept { return false; }

    void on_arrival(Time t, JobId job, double) {
        advance_to(t);
        state_.attained.emplace(job, 0.0);
    }

    void on_real_completion(Time t, JobId job) {
        advance_to(t);
        if (state_.attained.erase(job) == 0) throw ContractViolation("las: completion of unknown job");
    }

    [[nodiscard]] std::optional<Time> next_internal_event() const { return next_event_; }

    void on_internal_event(Time t) {
        advance_to(t);
        // The tie set has reached the next level; pin it there exactly.
        if (target_level_) {
            for (const auto& s : alloc_.shares) state_.attained[s.job] = *target_level_;
        }
    }

    [[nodiscard]] Allocation allocate() {
        alloc_ = las_allocate(state_);
        next_event_ = las_next_internal_event(state_, alloc_, since_);
        target_level_.reset();
        if (next_event_) target_level_ = detail::next_level_above(state_, state_.attained.at(alloc_.shares.front().job));
        return alloc_;
    }

    [[nodiscard]] const LasState& state() const noexcept { return state_; }

private:
    void advance_to(Time t) {
        const Time dt = t - since_;
        if (dt > 0.0) {
            for (const auto& s : alloc_.shares) state_.attained[s.job] += s.fraction * dt;
        }
        since_ = std::max(since_, t);
    }

    LasState state_;
    Allocation alloc_;
    Time since_ = 0.0;
    std::optional<Time> next_event_;
    std::optional<double> target_level_;
};

} // namespace sizesched
