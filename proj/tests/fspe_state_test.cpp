#include <sizesched/policies/fspe.hpp>

#include <gtest/gtest.h>

using namespace sizesched;

namespace {

const JobId J1 = job_id(1);
const JobId J2 = job_id(2);

FspePsState with_queue(std::initializer_list<VirtualJob> q, Time t = 0.0) {
    FspePsState s;
    s.virtual_queue.assign(q.begin(), q.end());
    s.virtual_time = t;
    return s;
}

} // namespace

TEST(FspeJobArrival, IntoEmptyQueue) {
    FspePsState s;
    fspe_job_arrival(s, 0.0, J1, 5.0);
    ASSERT_EQ(s.virtual_queue.size(), 1u);
    EXPECT_EQ(s.virtual_queue[0].job, J1);
    EXPECT_EQ(s.virtual_queue[0].remaining, 5.0);
    EXPECT_TRUE(s.virtual_queue[0].active);
    EXPECT_EQ(s.virtual_time, 0.0);
}

TEST(FspeJobArrival, EqualEstimatesQueueBehind) {
    auto s = with_queue({{J1, 2.0, true}});
    fspe_job_arrival(s, 0.0, J2, 2.0);
    ASSERT_EQ(s.virtual_queue.size(), 2u);
    EXPECT_EQ(s.virtual_queue[0].job, J1);
    EXPECT_EQ(s.virtual_queue[1].job, J2);
}

TEST(FspeJobArrival, UpdatesVirtualTimeBeforeInserting) {
    auto s = with_queue({{J1, 4.0, true}});
    fspe_job_arrival(s, 2.0, J2, 1.0);
    ASSERT_EQ(s.virtual_queue.size(), 2u);
    EXPECT_EQ(s.virtual_queue[0].job, J2);
    EXPECT_DOUBLE_EQ(s.virtual_queue[0].remaining, 1.0);
    EXPECT_EQ(s.virtual_queue[1].job, J1);
    EXPECT_DOUBLE_EQ(s.virtual_queue[1].remaining, 2.0);
    EXPECT_EQ(s.virtual_time, 2.0);
}

TEST(FspeUpdateVirtualTime, UniformShift) {
    auto s = with_queue({{J1, 2.0, true}, {J2, 5.0, true}});
    fspe_update_virtual_time(s, 1.0);
    EXPECT_DOUBLE_EQ(s.virtual_queue[0].remaining, 1.5);
    EXPECT_DOUBLE_EQ(s.virtual_queue[1].remaining, 4.5);
    EXPECT_EQ(s.virtual_time, 1.0);

    fspe_update_virtual_time(s, 1.0);
    EXPECT_DOUBLE_EQ(s.virtual_queue[0].remaining, 1.5);
}

TEST(FspeUpdateVirtualTime, EmptyQueueOnlyMovesClock) {
    FspePsState s;
    fspe_update_virtual_time(s, 7.0);
    EXPECT_EQ(s.virtual_time, 7.0);
    EXPECT_TRUE(s.virtual_queue.empty());
}

TEST(FspeUpdateVirtualTime, RejectsGoingBackwards) {
    auto s = with_queue({}, 5.0);
    EXPECT_THROW(fspe_update_virtual_time(s, 4.0), ContractViolation);
}

TEST(FspeNextVirtualCompletion, Formula) {
    EXPECT_FALSE(fspe_next_virtual_completion(FspePsState{}));
    const auto s = with_queue({{J1, 2.0, true}, {J2, 3.0, true}, {job_id(3), 9.0, false}}, 10.0);
    EXPECT_DOUBLE_EQ(*fspe_next_virtual_completion(s), 16.0);
    EXPECT_DOUBLE_EQ(*fspe_next_virtual_completion(with_queue({{J1, 1.0, true}})), 1.0);
}

TEST(FspeVirtualCompletion, ActiveHeadBecomesLate) {
    auto s = with_queue({{J1, 2.0, true}});
    fspe_virtual_completion(s, 2.0);
    EXPECT_TRUE(s.virtual_queue.empty());
    ASSERT_EQ(s.late.size(), 1u);
    EXPECT_EQ(s.late[0], J1);
}

TEST(FspeVirtualCompletion, FinishedHeadIsDiscarded) {
    auto s = with_queue({{J1, 2.0, false}});
    fspe_virtual_completion(s, 2.0);
    EXPECT_TRUE(s.virtual_queue.empty());
    EXPECT_TRUE(s.late.empty());
}

TEST(FspeVirtualCompletion, RemainingJobsShiftByShare) {
    auto s = with_queue({{J1, 1.0, true}, {J2, 3.0, true}});
    const auto at = fspe_next_virtual_completion(s);
    ASSERT_TRUE(at);
    EXPECT_DOUBLE_EQ(*at, 2.0);
    fspe_virtual_completion(s, *at);
    ASSERT_EQ(s.virtual_queue.size(), 1u);
    EXPECT_EQ(s.virtual_queue[0].job, J2);
    EXPECT_DOUBLE_EQ(s.virtual_queue[0].remaining, 2.0);
    ASSERT_EQ(s.late.size(), 1u);
    EXPECT_EQ(s.late[0], J1);
}

TEST(FspeVirtualCompletion, DetectsInconsistentTiming) {
    auto s = with_queue({{J1, 2.0, true}});
    EXPECT_THROW(fspe_virtual_completion(s, 1.0), InternalError);
    FspePsState empty;
    EXPECT_THROW(fspe_virtual_completion(empty, 1.0), ContractViolation);
}

TEST(FspeRealCompletion, QueuedJobIsMarkedInactive) {
    auto s = with_queue({{J1, 2.0, true}});
    fspe_real_completion(s, J1);
    ASSERT_EQ(s.virtual_queue.size(), 1u);
    EXPECT_FALSE(s.virtual_queue[0].active);
}

TEST(FspeRealCompletion, LateJobLeavesLateSet) {
    FspePsState s;
    s.late = {J1};
    fspe_real_completion(s, J1);
    EXPECT_TRUE(s.late.empty());
}

TEST(FspeRealCompletion, UnknownJobIsAnError) {
    auto s = with_queue({{J1, 2.0, false}});
    EXPECT_THROW(fspe_real_completion(s, J1), ContractViolation);
    EXPECT_THROW(fspe_real_completion(s, J2), ContractViolation);
}

TEST(FspeProcessJob, LateJobsShareUnderPs) {
    FspePsState s;
    s.late = {J1, J2};
    s.virtual_queue = {{job_id(3), 1.0, true}};
    EXPECT_EQ(fspe_process_job(s, FspeMode::fspe_ps), (Allocation{{{J1, 0.5}, {J2, 0.5}}}));
}

TEST(FspeProcessJob, FirstActiveEntryRuns) {
    auto s = with_queue({{J1, 2.0, false}, {J2, 5.0, true}});
    EXPECT_EQ(fspe_process_job(s, FspeMode::fspe_ps), Allocation::single(J2));
    EXPECT_EQ(fspe_process_job(s, FspeMode::fspe), Allocation::single(J2));
    EXPECT_TRUE(fspe_process_job(with_queue({{J1, 2.0, false}}), FspeMode::fspe).empty());
    EXPECT_TRUE(fspe_process_job(FspePsState{}, FspeMode::fspe_ps).empty());
}

TEST(FspeProcessJob, SequentialLateService) {
    FspePsState s;
    s.late = {J2, J1}; // J2 became late first
    EXPECT_EQ(fspe_process_job(s, FspeMode::fspe), Allocation::single(J2));
}
