#pragma once

#include <sizesched/error.hpp>
#include <sizesched/job.hpp>
#include <sizesched/metrics.hpp>
#include <sizesched/policy.hpp>
#include <sizesched/trace.hpp>
#include <sizesched/workload.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace sizesched {

/// Replay input for trace-driven experiments.
struct TraceInput {
    std::string path;
    TraceFormat format = TraceFormat::two_column;
    SwimColumns columns;
    double target_load = 0.9;
};

struct ExperimentPlan {
    WorkloadSpec workload; // its seed is ignored; see base_seed
    std::optional<TraceInput> trace;
    std::vector<PolicyKind> policies;
    std::size_t reps_min = 30;
    std::size_t reps_max = 5000;
    double ci_target = 0.05; // CI halfwidth over mean
    std::uint64_t base_seed = 0;
    unsigned threads = 1;
};

inline void validate(const ExperimentPlan& plan) {
    if (plan.policies.empty()) throw InvalidParameter("plan needs at least one policy");
    if (plan.reps_min < 1) throw InvalidParameter("reps-min must be at least 1");
    if (plan.reps_max < plan.reps_min) throw InvalidParameter("reps-max must not be below reps-min");
    if (!(plan.ci_target > 0.0 && plan.ci_target < 1.0)) throw InvalidParameter("ci-target must lie in (0, 1)");
    if (plan.trace) {
        if (!(plan.trace->target_load > 0.0 && plan.trace->target_load <= 1.0)) throw InvalidParameter("target load must lie in (0, 1]");
        if (!(plan.workload.sigma >= 0.0)) throw InvalidParameter("sigma must be non-negative");
    } else {
        validate(plan.workload);
    }
}

struct NormalizedMst {
    PolicyKind baseline{};
    double ratio = 0.0; // mean MST of the row's policy over mean MST of the baseline
};

struct ResultRow {
    std::string axis;  // empty outside sweeps
    double axis_value = 0.0;
    ExperimentPlan plan;
    PolicyKind policy{};
    double mst = 0.0;
    double ci_halfwidth = 0.0;
    std::vector<NormalizedMst> normalized;
    std::size_t reps = 0;
    bool converged = false;
};

/// Called once per (rep, policy) run with its per-job records. Invoked from
/// the calling thread in (rep, policy) order.
using RunSink = std::function<void(std::size_t rep, PolicyKind, const Workload&, const std::vector<CompletionRecord>&)>;

namespace detail {

inline Workload load_trace(const TraceInput& t) { return scale_to_load(ingest_trace(t.path, t.format, t.columns), t.target_load); }

/// Workload of repetition `rep`: a fresh synthetic draw with seed
/// base_seed + rep, or the trace with fresh estimation errors.
inline Workload rep_workload(const ExperimentPlan& plan, const Workload* trace, std::size_t rep) {
    const std::uint64_t seed = plan.base_seed + rep;
    if (trace) {
        Workload w = *trace;
        Rng rng(seed, static_cast<std::uint32_t>(Stream::errors));
        reestimate(w, plan.workload.sigma, rng);
        return w;
    }
    WorkloadSpec spec = plan.workload;
    spec.seed = seed;
    return generate_workload(spec);
}

struct RepOutcome {
    Workload workload;
    std::vector<std::vector<CompletionRecord>> records; // per policy
    std::vector<double> mst;                            // per policy
};

inline RepOutcome run_rep(const ExperimentPlan& plan, const Workload* trace, std::size_t rep, bool keep_records) {
    RepOutcome out{rep_workload(plan, trace, rep), {}, {}};
    for (auto kind : plan.policies) {
        auto records = simulate(out.workload, kind);
        out.mst.push_back(mean_sojourn(records));
        if (keep_records) out.records.push_back(std::move(records));
    }
    if (!keep_records) out.workload.jobs.clear();
    return out;
}

inline bool converged(const std::vector<std::vector<double>>& mst, std::size_t n, double target) {
    if (n < 2) return true;
    for (const auto& samples : mst) {
        const auto ci = ci95(std::span<const double>(samples.data(), n));
        if (ci.halfwidth > target * ci.mean) return false;
    }
    return true;
}

} // namespace detail

/// Run every policy on the same workload per repetition until each policy's
/// MST has a 95% CI halfwidth within ci_target of its mean (and at least
/// reps_min repetitions were done), or reps_max is reached.
[[nodiscard]] inline std::vector<ResultRow> run_plan(const ExperimentPlan& plan, const RunSink& sink = {}) {
    validate(plan);
    std::optional<Workload> trace;
    if (plan.trace) trace = detail::load_trace(*plan.trace);
    const Workload* trace_ptr = trace ? &*trace : nullptr;

    const std::size_t npol = plan.policies.size();
    std::vector<std::vector<double>> mst(npol);
    const unsigned threads = std::max(1u, plan.threads);
    std::size_t done = 0;
    std::optional<std::size_t> stop_at;

    while (!stop_at && done < plan.reps_max) {
        const std::size_t batch = std::min<std::size_t>(threads, plan.reps_max - done);
        std::vector<std::future<detail::RepOutcome>> pending;
        for (std::size_t k = 0; k < batch; ++k) {
            pending.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, detail::run_rep, std::cref(plan),
                                         trace_ptr, done + k, static_cast<bool>(sink)));
        }
        for (auto& f : pending) {
            auto outcome = f.get();
            const std::size_t rep = done++;
            if (stop_at) continue; // computed ahead in the batch; discarded so results do not depend on threads
            for (std::size_t p = 0; p < npol; ++p) {
                mst[p].push_back(outcome.mst[p]);
                if (sink) sink(rep, plan.policies[p], outcome.workload, outcome.records[p]);
            }
            const std::size_t n = rep + 1;
            if (n >= plan.reps_min && detail::converged(mst, n, plan.ci_target)) stop_at = n;
        }
    }

    const std::size_t reps = stop_at.value_or(mst.front().size());
    std::vector<double> means(npol);
    std::vector<ResultRow> rows;
    for (std::size_t p = 0; p < npol; ++p) {
        ResultRow row;
        row.plan = plan;
        row.policy = plan.policies[p];
        row.reps = reps;
        row.converged = stop_at.has_value();
        if (reps >= 2) {
            const auto ci = ci95(mst[p]);
            row.mst = ci.mean;
            row.ci_halfwidth = ci.halfwidth;
        } else {
            row.mst = mst[p].front();
        }
        means[p] = row.mst;
        rows.push_back(std::move(row));
    }
    for (std::size_t p = 0; p < npol; ++p) {
        for (std::size_t b = 0; b < npol; ++b) rows[p].normalized.push_back({plan.policies[b], means[p] / means[b]});
    }
    return rows;
}

enum class SweepAxis { sigma, shape, timeshape, load, njobs, alpha };

[[nodiscard]] inline SweepAxis parse_axis(std::string_view text) {
    if (text == "sigma") return SweepAxis::sigma;
    if (text == "shape") return SweepAxis::shape;
    if (text == "timeshape") return SweepAxis::timeshape;
    if (text == "load") return SweepAxis::load;
    if (text == "njobs") return SweepAxis::njobs;
    if (text == "alpha") return SweepAxis::alpha;
    throw InvalidParameter("unknown sweep axis '" + std::string(text) + "' (expected sigma, shape, timeshape, load, njobs or alpha)");
}

[[nodiscard]] constexpr std::string_view name(SweepAxis axis) noexcept {
    switch (axis) {
    case SweepAxis::sigma: return "sigma";
    case SweepAxis::shape: return "shape";
    case SweepAxis::timeshape: return "timeshape";
    case SweepAxis::load: return "load";
    case SweepAxis::njobs: return "njobs";
    case SweepAxis::alpha: return "alpha";
    }
    return "?";
}

/// `plan` with one parameter replaced.
[[nodiscard]] inline ExperimentPlan with_axis(ExperimentPlan plan, SweepAxis axis, double value) {
    if (plan.trace && axis != SweepAxis::sigma && axis != SweepAxis::load) {
        throw InvalidParameter("trace replays can only sweep sigma or load");
    }
    switch (axis) {
    case SweepAxis::sigma: plan.workload.sigma = value; break;
    case SweepAxis::shape: plan.workload.size_dist = WeibullSizes{value}; break;
    case SweepAxis::timeshape: plan.workload.timeshape = value; break;
    case SweepAxis::load:
        plan.workload.load = value;
        if (plan.trace) plan.trace->target_load = value;
        break;
    case SweepAxis::njobs:
        if (!(value >= 0.0) || value != static_cast<double>(static_cast<std::size_t>(value))) {
            throw InvalidParameter("njobs must be a non-negative integer");
        }
        plan.workload.njobs = static_cast<std::size_t>(value);
        break;
    case SweepAxis::alpha: plan.workload.size_dist = ParetoSizes{value}; break;
    }
    return plan;
}

/// run_plan at each axis value. Point k uses seeds base_seed + k * reps_max + r.
[[nodiscard]] inline std::vector<ResultRow> sweep(const ExperimentPlan& plan, SweepAxis axis, const std::vector<double>& values,
                                                  const std::function<void(std::size_t point, double value, std::size_t rep, PolicyKind,
                                                                           const Workload&, const std::vector<CompletionRecord>&)>& sink = {}) {
    std::vector<ResultRow> rows;
    for (std::size_t k = 0; k < values.size(); ++k) {
        auto point = with_axis(plan, axis, values[k]);
        point.base_seed = plan.base_seed + k * plan.reps_max;
        RunSink point_sink;
        if (sink) {
            point_sink = [&, k](std::size_t rep, PolicyKind p, const Workload& w, const std::vector<CompletionRecord>& r) {
                sink(k, values[k], rep, p, w, r);
            };
        }
        for (auto& row : run_plan(point, point_sink)) {
            row.axis = std::string(name(axis));
            row.axis_value = values[k];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Summary CSV, one row per (axis value, policy).
inline void write_summary_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    const auto old_flags = os.flags();
    const auto old_precision = os.precision();
    os << std::setprecision(12);
    std::vector<PolicyKind> baselines;
    if (!rows.empty()) {
        for (const auto& n : rows.front().normalized) baselines.push_back(n.baseline);
    }
    os << "axis,axis_value,source,size_dist,size_param,timeshape,load,sigma,njobs,base_seed,policy,mst,ci_halfwidth,reps,converged";
    for (auto b : baselines) os << ",norm_vs_" << name(b);
    os << '\n';
    for (const auto& row : rows) {
        const auto& p = row.plan;
        os << row.axis << ',';
        if (!row.axis.empty()) os << row.axis_value;
        os << ',';
        if (p.trace) {
            os << p.trace->path << ",trace,," << "," << p.trace->target_load << ',' << p.workload.sigma << ",,";
        } else {
            os << "synthetic,";
            if (const auto* w = std::get_if<WeibullSizes>(&p.workload.size_dist)) {
                os << "weibull," << w->shape;
            } else {
                os << "pareto," << std::get<ParetoSizes>(p.workload.size_dist).alpha;
            }
            os << ',' << p.workload.timeshape << ',' << p.workload.load << ',' << p.workload.sigma << ',' << p.workload.njobs << ',';
        }
        os << p.base_seed << ',' << name(row.policy) << ',' << row.mst << ',' << row.ci_halfwidth << ',' << row.reps << ','
           << (row.converged ? 1 : 0);
        for (const auto& n : row.normalized) os << ',' << n.ratio;
        os << '\n';
    }
    os.flags(old_flags);
    os.precision(old_precision);
}

/// Per-job CSV in completion order.
inline void write_records_csv(std::ostream& os, const std::vector<CompletionRecord>& records) {
    const auto old_precision = os.precision();
    os << std::setprecision(17);
    os << "id,arrival,size,estimate,completion,sojourn,slowdown\n";
    for (const auto& r : records) {
        os << index(r.id) << ',' << r.arrival << ',' << r.size << ',' << r.estimate << ',' << r.completion << ',' << r.sojourn() << ','
           << r.slowdown() << '\n';
    }
    os.precision(old_precision);
}

} // namespace sizesched
