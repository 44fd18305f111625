// Command-line driver: synthetic or trace-driven scheduling experiments.
//
// Exit status: 0 on success, 1 on runtime errors, 3 when some point hit
// --reps-max before its confidence interval converged. Usage errors use
// CLI11's codes.

#include <sizesched/sizesched.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace sizesched;

namespace {

constexpr int kNotConverged = 3;

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size()) throw InvalidParameter("bad sweep value '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw InvalidParameter("--values needs at least one number");
    return values;
}

std::string value_tag(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-server size-based scheduling simulator"};

    std::vector<std::string> policy_names;
    double shape = 0.25;
    double alpha = 2.0;
    double sigma = 0.5;
    double timeshape = 1.0;
    double load = 0.9;
    std::size_t njobs = 10'000;
    std::string size_dist = "weibull";
    std::uint64_t seed = 0;
    std::size_t reps_min = 30;
    std::size_t reps_max = 5000;
    double ci_target = 0.05;
    std::string sweep_axis;
    std::string sweep_values;
    std::string trace_path;
    std::string trace_format = "two_column";
    double target_load = 0.9;
    std::vector<std::size_t> swim_columns;
    std::string out_dir;
    bool per_job = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--policy", policy_names, "Policy to run (repeatable): fifo, ps, las, srpt, srpte, fspe, fspe+ps; default all");
    app.add_option("--shape", shape, "Weibull shape of job sizes")->capture_default_str();
    app.add_option("--alpha", alpha, "Pareto (Lomax) alpha of job sizes")->capture_default_str();
    app.add_option("--sigma", sigma, "Sigma of the log-normal estimation error")->capture_default_str();
    app.add_option("--timeshape", timeshape, "Weibull shape of inter-arrival times")->capture_default_str();
    app.add_option("--load", load, "Offered load of synthetic workloads")->capture_default_str();
    app.add_option("--njobs", njobs, "Jobs per synthetic workload")->capture_default_str();
    app.add_option("--size-dist", size_dist, "Job size family")->check(CLI::IsMember({"weibull", "pareto"}))->capture_default_str();
    app.add_option("--seed", seed, "Base seed; repetition r uses seed + r")->capture_default_str();
    app.add_option("--reps-min", reps_min, "Minimum repetitions")->capture_default_str();
    app.add_option("--reps-max", reps_max, "Maximum repetitions")->capture_default_str();
    app.add_option("--ci-target", ci_target, "Target 95% CI halfwidth relative to the mean")->capture_default_str();
    auto* sweep_opt = app.add_option("--sweep", sweep_axis, "Axis to sweep: sigma, shape, timeshape, load, njobs, alpha");
    app.add_option("--values", sweep_values, "Comma-separated sweep values")->needs(sweep_opt);
    auto* trace_opt = app.add_option("--trace", trace_path, "Replay a trace file instead of generating workloads");
    app.add_option("--trace-format", trace_format, "Trace format")
        ->check(CLI::IsMember({"two_column", "swim_tsv"}))
        ->needs(trace_opt)
        ->capture_default_str();
    app.add_option("--target-load", target_load, "Load the trace is rescaled to")->needs(trace_opt)->capture_default_str();
    app.add_option("--swim-columns", swim_columns, "SWIM columns: timestamp,input,shuffle,output (0-based; default 1,3,4,5)")
        ->expected(4)
        ->delimiter(',')
        ->needs(trace_opt);
    app.add_option("--out", out_dir, "Output directory for summary.csv (stdout when omitted)");
    app.add_flag("--per-job", per_job, "Also write one per-job CSV per (point, repetition, policy); needs --out");
    app.add_option("--threads", threads, "Repetitions run concurrently")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (per_job && out_dir.empty()) throw InvalidParameter("--per-job needs --out");
        if (!sweep_axis.empty() && sweep_values.empty()) throw InvalidParameter("--sweep needs --values");

        ExperimentPlan plan;
        plan.workload.njobs = njobs;
        plan.workload.size_dist = size_dist == "pareto" ? SizeDistribution{ParetoSizes{alpha}} : SizeDistribution{WeibullSizes{shape}};
        plan.workload.sigma = sigma;
        plan.workload.timeshape = timeshape;
        plan.workload.load = load;
        plan.reps_min = reps_min;
        plan.reps_max = reps_max;
        plan.ci_target = ci_target;
        plan.base_seed = seed;
        plan.threads = threads;
        if (policy_names.empty()) {
            plan.policies.assign(kAllPolicies.begin(), kAllPolicies.end());
        } else {
            for (const auto& n : policy_names) plan.policies.push_back(parse_policy(n));
        }
        if (!trace_path.empty()) {
            TraceInput t;
            t.path = trace_path;
            t.format = trace_format == "swim_tsv" ? TraceFormat::swim_tsv : TraceFormat::two_column;
            t.target_load = target_load;
            if (!swim_columns.empty()) t.columns = {swim_columns[0], swim_columns[1], swim_columns[2], swim_columns[3]};
            plan.trace = t;
        }

        fs::path jobs_dir;
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            if (per_job) {
                jobs_dir = fs::path(out_dir) / "jobs";
                fs::create_directories(jobs_dir);
            }
        }
        auto write_jobs = [&](const std::string& prefix, std::size_t rep, PolicyKind p, const std::vector<CompletionRecord>& records) {
            std::ofstream f(jobs_dir / (prefix + std::string(name(p)) + "_rep" + std::to_string(rep) + ".csv"));
            write_records_csv(f, records);
        };

        std::vector<ResultRow> rows;
        if (!sweep_axis.empty()) {
            const auto axis = parse_axis(sweep_axis);
            std::function<void(std::size_t, double, std::size_t, PolicyKind, const Workload&, const std::vector<CompletionRecord>&)> sink;
            if (per_job) {
                sink = [&](std::size_t, double value, std::size_t rep, PolicyKind p, const Workload&, const std::vector<CompletionRecord>& r) {
                    write_jobs(std::string(name(axis)) + "_" + value_tag(value) + "_", rep, p, r);
                };
            }
            rows = sweep(plan, axis, parse_values(sweep_values), sink);
        } else {
            RunSink sink;
            if (per_job) {
                sink = [&](std::size_t rep, PolicyKind p, const Workload&, const std::vector<CompletionRecord>& r) { write_jobs("", rep, p, r); };
            }
            rows = run_plan(plan, sink);
        }

        if (out_dir.empty()) {
            write_summary_csv(std::cout, rows);
        } else {
            std::ofstream f(fs::path(out_dir) / "summary.csv");
            write_summary_csv(f, rows);
        }

        bool all_converged = true;
        for (const auto& r : rows) all_converged = all_converged && r.converged;
        if (!all_converged) {
            std::cerr << "warning: reps-max reached before the confidence target at some points\n";
            return kNotConverged;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
