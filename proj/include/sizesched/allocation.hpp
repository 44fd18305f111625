#pragma once

#include <sizesched/job.hpp>

#include <vector>

namespace sizesched {

struct Share {
    JobId job{};
    double fraction = 0.0;

    friend bool operator==(const Share&, const Share&) = default;
};

/// Service rates handed to the server until the next event. Fractions of
/// the unit-rate server; they sum to at most one.
struct Allocation {
    std::vector<Share> shares;

    [[nodiscard]] bool empty() const noexcept { return shares.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return shares.size(); }

    [[nodiscard]] double total() const noexcept {
        double sum = 0.0;
        for (const auto& s : shares) sum += s.fraction;
        return sum;
    }

    static Allocation single(JobId job) { return Allocation{{Share{job, 1.0}}}; }

    /// Equal split among `jobs`.
    template <typename Range>
    static Allocation equal(const Range& jobs) {
        Allocation a;
        const auto n = static_cast<double>(std::size(jobs));
        a.shares.reserve(std::size(jobs));
        for (JobId j : jobs) a.shares.push_back({j, 1.0 / n});
        return a;
    }

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

} // namespace sizesched
