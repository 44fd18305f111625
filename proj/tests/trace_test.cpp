#include <sizesched/trace.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sizesched;

namespace {

std::vector<JobSpec> parse(const std::string& text, TraceFormat format = TraceFormat::two_column, const SwimColumns& cols = {}) {
    std::istringstream in(text);
    return parse_trace(in, format, cols);
}

Workload workload_of(std::vector<JobSpec> jobs) { return Workload{std::move(jobs), TraceSource{"mem", 0.0}}; }

} // namespace

TEST(ParseTrace, TwoColumnBasic) {
    const auto jobs = parse("0 10\n5 2\n");
    ASSERT_EQ(jobs.size(), 2u);
    EXPECT_EQ(jobs[0].arrival, 0.0);
    EXPECT_EQ(jobs[0].size, 10.0);
    EXPECT_EQ(jobs[1].arrival, 5.0);
    EXPECT_EQ(jobs[1].size, 2.0);
    EXPECT_EQ(jobs[1].estimate, 2.0);
    EXPECT_EQ(index(jobs[1].id), 1u);
}

TEST(ParseTrace, SeparatorsCommentsAndSorting) {
    const auto jobs = parse("# header\n3,1.5\n\n1\t4\n  2   8  \n");
    ASSERT_EQ(jobs.size(), 3u);
    EXPECT_EQ(jobs[0].arrival, 1.0);
    EXPECT_EQ(jobs[1].arrival, 2.0);
    EXPECT_EQ(jobs[2].arrival, 3.0);
    EXPECT_EQ(jobs[2].size, 1.5);
    for (std::size_t i = 0; i < jobs.size(); ++i) EXPECT_EQ(index(jobs[i].id), i);
}

TEST(ParseTrace, TiesKeepFileOrder) {
    const auto jobs = parse("1 5\n1 6\n0 7\n");
    EXPECT_EQ(jobs[1].size, 5.0);
    EXPECT_EQ(jobs[2].size, 6.0);
}

TEST(ParseTrace, EmptyInputIsAnError) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("# only a comment\n\n"), ParseError);
}

TEST(ParseTrace, BadLineReportsLineNumber) {
    try {
        (void)parse("0 1\n# c\n2 x\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    try {
        (void)parse("0 1 2\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
    }
}

TEST(ParseTrace, NonPositiveSizeIsAnError) {
    EXPECT_THROW(parse("0 0\n"), ParseError);
    EXPECT_THROW(parse("0 -3\n"), ParseError);
}

TEST(ParseTrace, SwimSumsByteCounts) {
    const auto jobs = parse("job0\t100\t0\t3\t4\t5\n", TraceFormat::swim_tsv);
    ASSERT_EQ(jobs.size(), 1u);
    EXPECT_EQ(jobs[0].arrival, 100.0);
    EXPECT_EQ(jobs[0].size, 12.0);
}

TEST(ParseTrace, SwimCustomColumns) {
    SwimColumns cols{0, 1, 2, 3};
    const auto jobs = parse("7\t1\t1\t1\n", TraceFormat::swim_tsv, cols);
    EXPECT_EQ(jobs[0].arrival, 7.0);
    EXPECT_EQ(jobs[0].size, 3.0);
    EXPECT_THROW(parse("job0\t100\t0\n", TraceFormat::swim_tsv), ParseError);
    EXPECT_THROW(parse("job0\t100\t0\t0\t0\t0\n", TraceFormat::swim_tsv), ParseError);
}

TEST(IngestTrace, ReadsFileAndRecordsProvenance) {
    const auto path = std::filesystem::temp_directory_path() / "sizesched_trace_test.txt";
    {
        std::ofstream f(path);
        f << "0 10\n5 2\n";
    }
    const auto w = ingest_trace(path.string(), TraceFormat::two_column);
    EXPECT_EQ(w.jobs.size(), 2u);
    EXPECT_EQ(std::get<TraceSource>(w.provenance).path, path.string());
    std::filesystem::remove(path);
    EXPECT_THROW((void)ingest_trace(path.string(), TraceFormat::two_column), ParseError);
}

TEST(ScaleToLoad, RateOneLeavesSizesAlone) {
    // total 90 over span 100 at target 0.9: rate 90 / (0.9 * 100) = 1
    auto w = scale_to_load(workload_of({{job_id(0), 0.0, 40.0, 40.0}, {job_id(1), 100.0, 50.0, 50.0}}), 0.9);
    EXPECT_DOUBLE_EQ(w.jobs[0].size, 40.0);
    EXPECT_DOUBLE_EQ(w.jobs[1].size, 50.0);
    EXPECT_DOUBLE_EQ(std::get<TraceSource>(w.provenance).target_load, 0.9);
}

TEST(ScaleToLoad, RateTwoHalvesSizesAndEstimates) {
    auto w = scale_to_load(workload_of({{job_id(0), 0.0, 80.0, 60.0}, {job_id(1), 100.0, 100.0, 120.0}}), 0.9);
    EXPECT_DOUBLE_EQ(w.jobs[0].size, 40.0);
    EXPECT_DOUBLE_EQ(w.jobs[1].size, 50.0);
    EXPECT_DOUBLE_EQ(w.jobs[0].estimate, 30.0);
    EXPECT_DOUBLE_EQ(w.jobs[1].estimate, 60.0);
}

TEST(ScaleToLoad, Idempotent) {
    auto once = scale_to_load(workload_of({{job_id(0), 0.0, 3.0, 3.0}, {job_id(1), 2.0, 3.0, 3.0}, {job_id(2), 7.0, 3.0, 3.0}}), 0.75);
    auto twice = scale_to_load(once, 0.75);
    for (std::size_t i = 0; i < once.jobs.size(); ++i) EXPECT_NEAR(once.jobs[i].size, twice.jobs[i].size, 1e-12);
}

TEST(ScaleToLoad, Errors) {
    EXPECT_THROW((void)scale_to_load(workload_of({{job_id(0), 0.0, 1.0, 1.0}}), 0.9), InvalidParameter);
    EXPECT_THROW((void)scale_to_load(workload_of({{job_id(0), 4.0, 1.0, 1.0}, {job_id(1), 4.0, 1.0, 1.0}}), 0.9), InvalidParameter);
    EXPECT_THROW((void)scale_to_load(workload_of({{job_id(0), 0.0, 1.0, 1.0}, {job_id(1), 4.0, 1.0, 1.0}}), 0.0), InvalidParameter);
}
