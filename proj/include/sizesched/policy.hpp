#pragma once

#include <sizesched/engine.hpp>
#include <sizesched/error.hpp>
#include <sizesched/policies/fifo.hpp>
#include <sizesched/policies/fspe.hpp>
#include <sizesched/policies/las.hpp>
#include <sizesched/policies/ps.hpp>
#include <sizesched/policies/srpt.hpp>

#include <array>
#include <string>
#include <string_view>
#include <variant>

namespace sizesched {

enum class PolicyKind { fifo, ps, las, srpt, srpte, fspe, fspe_ps };

inline constexpr std::array<PolicyKind, 7> kAllPolicies = {PolicyKind::fifo, PolicyKind::ps,   PolicyKind::las,    PolicyKind::srpt,
                                                           PolicyKind::srpte, PolicyKind::fspe, PolicyKind::fspe_ps};

[[nodiscard]] constexpr std::string_view name(PolicyKind kind) noexcept {
    switch (kind) {
    case PolicyKind::fifo: return "fifo";
    case PolicyKind::ps: return "ps";
    case PolicyKind::las: return "las";
    case PolicyKind::srpt: return "srpt";
    case PolicyKind::srpte: return "srpte";
    case PolicyKind::fspe: return "fspe";
    case PolicyKind::fspe_ps: return "fspe+ps";
    }
    return "?";
}

[[nodiscard]] inline PolicyKind parse_policy(std::string_view text) {
    for (auto kind : kAllPolicies) {
        if (name(kind) == text) return kind;
    }
    throw InvalidParameter("unknown policy '" + std::string(text) + "' (expected fifo, ps, las, srpt, srpte, fspe or fspe+ps)");
}

/// A policy chosen at run time.
class AnyPolicy {
public:
    explicit AnyPolicy(PolicyKind kind) : kind_(kind), impl_(make(kind)) {}

    [[nodiscard]] PolicyKind kind() const noexcept { return kind_; }

    [[nodiscard]] bool exact_sizes() const {
        return std::visit([](const auto& p) { return p.exact_sizes(); }, impl_);
    }
    void on_arrival(Time t, JobId j, double estimate) {
        std::visit([&](auto& p) { p.on_arrival(t, j, estimate); }, impl_);
    }
    void on_real_completion(Time t, JobId j) {
        std::visit([&](auto& p) { p.on_real_completion(t, j); }, impl_);
    }
    [[nodiscard]] std::optional<Time> next_internal_event() const {
        return std::visit([](const auto& p) { return p.next_internal_event(); }, impl_);
    }
    void on_internal_event(Time t) {
        std::visit([&](auto& p) { p.on_internal_event(t); }, impl_);
    }
    [[nodiscard]] Allocation allocate() {
        return std::visit([](auto& p) { return p.allocate(); }, impl_);
    }

private:
    using Impl = std::variant<FifoPolicy, PsPolicy, LasPolicy, SrptePolicy, FspePolicy>;

    static Impl make(PolicyKind kind) {
        switch (kind) {
        case PolicyKind::fifo: return FifoPolicy{};
        case PolicyKind::ps: return PsPolicy{};
        case PolicyKind::las: return LasPolicy{};
        case PolicyKind::srpt: return SrptePolicy{true};
        case PolicyKind::srpte: return SrptePolicy{false};
        case PolicyKind::fspe: return FspePolicy{FspeMode::fspe};
        case PolicyKind::fspe_ps: return FspePolicy{FspeMode::fspe_ps};
        }
        throw InvalidParameter("unknown policy kind");
    }

    PolicyKind kind_;
    Impl impl_;
};

static_assert(SchedulingPolicy<AnyPolicy>);
static_assert(SchedulingPolicy<FspePolicy>);
static_assert(SchedulingPolicy<LasPolicy>);

/// Run `workload` under a fresh instance of `kind`.
[[nodiscard]] inline std::vector<CompletionRecord> simulate(const Workload& workload, PolicyKind kind) {
    AnyPolicy policy(kind);
    return run_simulation(workload, policy);
}

} // namespace sizesched
