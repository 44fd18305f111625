#pragma once

#include <sizesched/error.hpp>
#include <sizesched/job.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace sizesched {

enum class TraceFormat { two_column, swim_tsv };

/// Column indices (0-based) of a SWIM workload TSV. The defaults follow the
/// FB-2010 sample files: job name, submit time, gap, map input bytes,
/// shuffle bytes, reduce output bytes.
struct SwimColumns {
    std::size_t timestamp = 1;
    std::size_t input_bytes = 3;
    std::size_t shuffle_bytes = 4;
    std::size_t output_bytes = 5;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view line, std::string_view seps, bool merge) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const auto next = line.find_first_of(seps, pos);
        const auto field = line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        if (!merge || !field.empty()) fields.push_back(trim(field));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return fields;
}

inline double parse_number(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError("not a number: '" + std::string(field) + "'", line);
    }
    return value;
}

inline bool skippable(std::string_view line) {
    line = trim(line);
    return line.empty() || line.front() == '#';
}

} // namespace detail

/// Parse a trace from a stream. Sizes stay in raw units; estimates are set
/// equal to sizes. Jobs are returned sorted by arrival with ids reassigned.
[[nodiscard]] inline std::vector<JobSpec> parse_trace(std::istream& in, TraceFormat format, const SwimColumns& cols = {}) {
    std::vector<JobSpec> jobs;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (detail::skippable(raw)) continue;
        double arrival = 0.0;
        double size = 0.0;
        if (format == TraceFormat::two_column) {
            const auto fields = detail::split(detail::trim(raw), " \t,", true);
            if (fields.size() != 2) throw ParseError("expected 'arrival size', got " + std::to_string(fields.size()) + " fields", line_no);
            arrival = detail::parse_number(fields[0], line_no);
            size = detail::parse_number(fields[1], line_no);
        } else {
            const auto fields = detail::split(raw, "\t", false);
            const std::size_t needed = 1 + std::max({cols.timestamp, cols.input_bytes, cols.shuffle_bytes, cols.output_bytes});
            if (fields.size() < needed) throw ParseError("expected at least " + std::to_string(needed) + " tab-separated fields", line_no);
            arrival = detail::parse_number(fields[cols.timestamp], line_no);
            size = detail::parse_number(fields[cols.input_bytes], line_no) + detail::parse_number(fields[cols.shuffle_bytes], line_no) +
                   detail::parse_number(fields[cols.output_bytes], line_no);
        }
        if (!std::isfinite(arrival) || arrival < 0.0) throw ParseError("arrival must be a non-negative number", line_no);
        if (!(size > 0.0) || !std::isfinite(size)) throw ParseError("job size must be positive", line_no);
        jobs.push_back({JobId{}, arrival, size, size});
    }
    if (jobs.empty()) throw ParseError("trace contains no jobs", 0);
    std::stable_sort(jobs.begin(), jobs.end(), [](const JobSpec& a, const JobSpec& b) { return a.arrival < b.arrival; });
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].id = job_id(i);
    return jobs;
}

[[nodiscard]] inline Workload ingest_trace(const std::string& path, TraceFormat format, const SwimColumns& cols = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file '" + path + "'", 0);
    return Workload{parse_trace(in, format, cols), TraceSource{path, 0.0}};
}

/// Rescale sizes (and estimates) so that a unit-rate server sees offered load
/// `target_load`, where offered load is total size over the arrival span.
[[nodiscard]] inline Workload scale_to_load(Workload w, double target_load) {
    if (!(target_load > 0.0 && target_load <= 1.0)) throw InvalidParameter("target load must lie in (0, 1]");
    if (w.jobs.size() < 2) throw InvalidParameter("load scaling needs at least two jobs");
    double total = 0.0;
    for (const auto& j : w.jobs) total += j.size;
    const Time span = w.jobs.back().arrival - w.jobs.front().arrival;
    if (!(span > 0.0)) throw InvalidParameter("all jobs arrive at the same instant; offered load is undefined");
    const double rate = total / (target_load * span);
    for (auto& j : w.jobs) {
        j.size /= rate;
        j.estimate /= rate;
    }
    if (auto* src = std::get_if<TraceSource>(&w.provenance)) src->target_load = target_load;
    return w;
}

} // namespace sizesched
