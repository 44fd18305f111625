#pragma once

#include <sizesched/error.hpp>
#include <sizesched/job.hpp>
#include <sizesched/random.hpp>

#include <cmath>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace sizesched {

/// Weibull scale giving unit mean for the given shape: 1 / Gamma(1 + 1/shape).
[[nodiscard]] inline double weibull_scale_for_unit_mean(double shape) {
    if (!(std::isfinite(shape) && shape > 0.0)) throw InvalidParameter("weibull shape must be positive");
    return 1.0 / std::tgamma(1.0 + 1.0 / shape);
}

namespace detail {

inline double weibull_draw(double scale, double shape, Rng& rng) {
    return scale * std::pow(-std::log(rng.uniform_open()), 1.0 / shape);
}

// Lomax scale: unit mean when the mean exists, otherwise 1.
inline double lomax_scale(double alpha) { return alpha > 1.0 ? alpha - 1.0 : 1.0; }

inline double lomax_draw(double scale, double alpha, Rng& rng) {
    return scale * (std::pow(rng.uniform_open(), -1.0 / alpha) - 1.0);
}

} // namespace detail

/// Job sizes by inverse-transform sampling. Weibull sizes have unit mean;
/// Lomax sizes have unit mean when alpha > 1.
[[nodiscard]] inline std::vector<double> sample_sizes(const WorkloadSpec& spec, Rng& rng) {
    validate(spec);
    std::vector<double> sizes;
    sizes.reserve(spec.njobs);
    if (const auto* w = std::get_if<WeibullSizes>(&spec.size_dist)) {
        const double scale = weibull_scale_for_unit_mean(w->shape);
        for (std::size_t i = 0; i < spec.njobs; ++i) sizes.push_back(detail::weibull_draw(scale, w->shape, rng));
    } else {
        const double alpha = std::get<ParetoSizes>(spec.size_dist).alpha;
        const double scale = detail::lomax_scale(alpha);
        for (std::size_t i = 0; i < spec.njobs; ++i) {
            double x = detail::lomax_draw(scale, alpha, rng);
            // U rounds to 1 with probability ~2^-54; keep sizes strictly positive.
            sizes.push_back(x > 0.0 ? x : scale * 1e-16);
        }
    }
    return sizes;
}

/// Arrival instants with Weibull(timeshape) gaps of mean 1/load. The first
/// job arrives after one gap.
[[nodiscard]] inline std::vector<Time> sample_arrivals(double timeshape, double load, std::size_t njobs, Rng& rng) {
    if (!(std::isfinite(timeshape) && timeshape > 0.0)) throw InvalidParameter("timeshape must be positive");
    if (!(load > 0.0 && load <= 1.0)) throw InvalidParameter("load must lie in (0, 1]");
    const double scale = (1.0 / load) * weibull_scale_for_unit_mean(timeshape);
    std::vector<Time> arrivals;
    arrivals.reserve(njobs);
    Time now = 0.0;
    for (std::size_t i = 0; i < njobs; ++i) {
        now += detail::weibull_draw(scale, timeshape, rng);
        arrivals.push_back(now);
    }
    return arrivals;
}

/// Multiplicative log-normal estimation error: estimate = size * exp(sigma * Z).
[[nodiscard]] inline std::vector<double> apply_error(std::span<const double> sizes, double sigma, Rng& rng) {
    if (!(std::isfinite(sigma) && sigma >= 0.0)) throw InvalidParameter("sigma must be non-negative");
    std::vector<double> estimates;
    estimates.reserve(sizes.size());
    for (double s : sizes) {
        if (!(s > 0.0)) throw InvalidParameter("sizes must be positive");
        estimates.push_back(s * std::exp(sigma * rng.standard_normal()));
    }
    return estimates;
}

/// Random streams carved out of a workload seed.
enum class Stream : std::uint32_t { sizes = 0, arrivals = 1, errors = 2 };

/// Draw a complete synthetic workload. Sizes, gaps and errors use separate
/// streams of the seed, so e.g. a sigma sweep at a fixed seed keeps the
/// same sizes and arrivals.
[[nodiscard]] inline Workload generate_workload(const WorkloadSpec& spec) {
    validate(spec);
    Rng size_rng(spec.seed, static_cast<std::uint32_t>(Stream::sizes));
    Rng arrival_rng(spec.seed, static_cast<std::uint32_t>(Stream::arrivals));
    Rng error_rng(spec.seed, static_cast<std::uint32_t>(Stream::errors));

    const auto sizes = sample_sizes(spec, size_rng);
    const auto arrivals = sample_arrivals(spec.timeshape, spec.load, spec.njobs, arrival_rng);
    const auto estimates = apply_error(sizes, spec.sigma, error_rng);

    Workload w{{}, spec};
    w.jobs.reserve(spec.njobs);
    for (std::size_t i = 0; i < spec.njobs; ++i) {
        w.jobs.push_back({job_id(i), arrivals[i], sizes[i], estimates[i]});
    }
    return w;
}

/// Replace every estimate by size * log-normal noise drawn from `rng`.
inline void reestimate(Workload& w, double sigma, Rng& rng) {
    std::vector<double> sizes;
    sizes.reserve(w.jobs.size());
    for (const auto& j : w.jobs) sizes.push_back(j.size);
    const auto estimates = apply_error(sizes, sigma, rng);
    for (std::size_t i = 0; i < w.jobs.size(); ++i) w.jobs[i].estimate = estimates[i];
}

} // namespace sizesched
