#pragma once

#include <sizesched/allocation.hpp>
#include <sizesched/engine.hpp>
#include <sizesched/error.hpp>
#include <sizesched/experiment.hpp>
#include <sizesched/job.hpp>
#include <sizesched/metrics.hpp>
#include <sizesched/policy.hpp>
#include <sizesched/random.hpp>
#include <sizesched/trace.hpp>
#include <sizesched/workload.hpp>
