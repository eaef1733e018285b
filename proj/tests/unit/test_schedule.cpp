#include <gtest/gtest.h>

#include "lacunary/error.hpp"
#include "lacunary/schedule.hpp"

using namespace lacunary;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Io;
}
}  // namespace

TEST(Schedule, GeometricBreakpoints) {
    const auto t = make_lacunary_schedule(ScheduleFamily::Geometric, {{"ratio", 2}}, 4);
    EXPECT_EQ(t.breakpoints(), (std::vector<Index>{0, 2, 4, 8, 16}));
    EXPECT_EQ(t.tag(), "geometric:2:4");
}

TEST(Schedule, PowerAndFactorial) {
    EXPECT_EQ(make_lacunary_schedule(ScheduleFamily::Power, {{"p", 2}}, 4).breakpoints(),
              (std::vector<Index>{0, 1, 4, 9, 16}));
    EXPECT_EQ(make_lacunary_schedule(ScheduleFamily::Factorial, {}, 5).breakpoints(),
              (std::vector<Index>{0, 1, 2, 6, 24, 120}));
}

TEST(Schedule, NonIntegerRatio) {
    const auto t = make_lacunary_schedule(ScheduleFamily::Geometric, {{"ratio", 1.5}}, 6);
    for (Index r = 1; r <= t.r_max(); ++r) EXPECT_GT(t.k(r), t.k(r - 1));
}

TEST(Schedule, Errors) {
    EXPECT_EQ(kind_of([] { make_explicit_schedule({0, 1, 3, 2}); }), ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { make_explicit_schedule({1, 2, 3}); }), ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { make_explicit_schedule({0, 1}); }), ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { make_lacunary_schedule(ScheduleFamily::Geometric, {{"ratio", 2}}, 70); }), ErrorKind::Range);
    EXPECT_EQ(kind_of([] { make_lacunary_schedule(ScheduleFamily::Factorial, {}, 25); }), ErrorKind::Range);
    EXPECT_EQ(kind_of([] { make_lacunary_schedule(ScheduleFamily::Geometric, {{"ratio", 1}}, 5); }), ErrorKind::Parameter);
    EXPECT_EQ(kind_of([] { make_explicit_schedule({0, 1, 4}).q(1); }), ErrorKind::Parameter);
    EXPECT_EQ(kind_of([] { schedule_family_from_string("nosuch"); }), ErrorKind::Identifier);
}

TEST(Schedule, RatiosAndBlocks) {
    const auto t = make_explicit_schedule({0, 1, 4, 9, 16});
    EXPECT_EQ(t.h(3), 5);
    EXPECT_DOUBLE_EQ(t.q(2), 4.0);
    EXPECT_EQ(t.blocks_within(10), 3);
    EXPECT_EQ(t.blocks_within(0), 0);
    EXPECT_EQ(t.block_of(1), 1);
    EXPECT_EQ(t.block_of(5), 3);
    EXPECT_EQ(t.block_of(9), 3);
    EXPECT_EQ(t.block_of(10), 4);
}

TEST(ScheduleStats, Geometric) {
    const auto t = make_lacunary_schedule(ScheduleFamily::Geometric, {{"ratio", 2}}, 10);
    const auto s = schedule_stats(t, 5);
    for (double q : s.q) EXPECT_EQ(q, 2.0);
    EXPECT_EQ(s.tail_inf_q, 2.0);
    EXPECT_EQ(s.tail_sup_q, 2.0);
}

TEST(ScheduleStats, PowerTail) {
    const auto t = make_lacunary_schedule(ScheduleFamily::Power, {{"p", 2}}, 100);
    const auto s = schedule_stats(t, 10);
    EXPECT_NEAR(s.tail_inf_q, (100.0 / 99.0) * (100.0 / 99.0), 1e-12);
}

TEST(ScheduleStats, Factorial) {
    const auto t = make_lacunary_schedule(ScheduleFamily::Factorial, {}, 8);
    const auto s = schedule_stats(t, 3);
    EXPECT_EQ(s.q, (std::vector<double>{2, 3, 4, 5, 6, 7, 8}));
    EXPECT_EQ(s.tail_sup_q, 8.0);
    EXPECT_EQ(kind_of([&] { schedule_stats(t, 0); }), ErrorKind::Parameter);
}

TEST(ValidateSchedule, Geometric) {
    const auto d = validate_schedule(make_lacunary_schedule(ScheduleFamily::Geometric, {{"ratio", 2}}, 20));
    EXPECT_TRUE(d.structural_ok());
    EXPECT_TRUE(d.h_growing);
    EXPECT_TRUE(d.liminf_gt_one);
    EXPECT_TRUE(d.limsup_finite);
    ASSERT_TRUE(d.stats);
    EXPECT_EQ(d.stats->tail_inf_q, 2.0);
}

TEST(ValidateSchedule, PowerFailsLiminf) {
    const auto d = validate_schedule(make_lacunary_schedule(ScheduleFamily::Power, {{"p", 2}}, 200));
    EXPECT_TRUE(d.structural_ok());
    EXPECT_FALSE(d.liminf_gt_one);
}

TEST(ValidateSchedule, FactorialFailsLimsup) {
    const auto d = validate_schedule(make_lacunary_schedule(ScheduleFamily::Factorial, {}, 20));
    EXPECT_FALSE(d.limsup_finite);
}

TEST(ValidateSchedule, ConstantGaps) {
    const auto d = validate_breakpoints({0, 5, 6, 7});
    EXPECT_TRUE(d.structural_ok());
    EXPECT_FALSE(d.h_growing);
}

TEST(ValidateSchedule, RawListNeverThrows) {
    const auto d = validate_breakpoints({0, 3, 2});
    EXPECT_FALSE(d.strictly_increasing);
    EXPECT_FALSE(d.messages.empty());
    EXPECT_FALSE(validate_breakpoints({1, 2, 3}).starts_at_zero);
}
