#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "specshrink/errors.hpp"
#include "specshrink/parallel.hpp"
#include "specshrink/summation.hpp"
#include "support/oracles.hpp"

using namespace specshrink;

TEST(CompensatedSum, RecoversCancelledLowOrderTerms) {
    CompensatedSum acc;
    acc.add(1e16);
    for (int i = 0; i < 1000; ++i) acc.add(1.0);
    acc.add(-1e16);
    EXPECT_EQ(acc.value(), 1000.0);
}

TEST(CompensatedSum, MergeIsErrorFree) {
    CompensatedSum a, b;
    a.add(1e16);
    a.add(1.0);
    b.add(-1e16);
    b.add(1.0);
    EXPECT_EQ(merge(a, b).value(), 2.0);
}

TEST(CompensatedSum, InfinityPropagates) {
    CompensatedSum acc;
    acc.add(1.0);
    acc.add(INFINITY);
    acc.add(1.0);
    EXPECT_TRUE(std::isinf(acc.value()));
}

TEST(DeterministicSum, BitwiseIndependentOfThreadCount) {
    const std::size_t n = 1'000'003;
    auto term = [](std::size_t i) { return std::sin(static_cast<double>(i)) / (1.0 + i); };
    set_thread_count(1);
    const double one = deterministic_sum(n, term).value();
    set_thread_count(8);
    const double eight = deterministic_sum(n, term).value();
    set_thread_count(0);
    EXPECT_EQ(one, eight);
}

TEST(DeterministicSum, MatchesQuadOracle) {
    const std::size_t n = 10'000'000;
    const double got = deterministic_sum(n, [](std::size_t i) { return std::pow(static_cast<double>(i + 1), -0.75); }).value();
    const long double want = oracle::quad_sum(1, n + 1, [](std::int64_t i) { return powl((long double)i, -0.75L); });
    EXPECT_LT(std::fabs(got - (double)want) / (double)want, 1e-12);
}

TEST(DeterministicSums, ColumnsMatchScalarSums) {
    const std::size_t n = 20'000;
    auto sums = deterministic_sums(n, 2, [](std::size_t begin, std::size_t end, CompensatedSum* acc) {
        for (std::size_t i = begin; i < end; ++i) {
            acc[0].add(1.0 / (1.0 + i));
            acc[1].add(static_cast<double>(i));
        }
    });
    EXPECT_EQ(sums[0], deterministic_sum(n, [](std::size_t i) { return 1.0 / (1.0 + i); }).value());
    EXPECT_EQ(sums[1], static_cast<double>(n) * (n - 1) / 2.0);
}
