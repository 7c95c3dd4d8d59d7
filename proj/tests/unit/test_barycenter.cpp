#include <gtest/gtest.h>

#include "gen.hpp"
#include "wb/barycenter.hpp"
#include "wb/cost.hpp"

using namespace wb;

namespace {

Rational lp_oracle(const ProblemInstance& inst) {
    auto lp = barycenter_lp(inst, enumerate_tuples(inst, 1000));
    auto o = wbtest::brute_force_lp(lp);
    EXPECT_TRUE(o.feasible);
    return o.value;
}

std::size_t max_size(const ProblemInstance& inst) {
    std::size_t s = 0;
    for (const auto& mu : inst.measures) s = std::max(s, mu.size());
    return s;
}

}  // namespace

TEST(Barycenter, SquareExample) {
    auto inst = gen_square_example(Rational(6));
    auto res = solve_exact(inst);
    EXPECT_EQ(res.value, 9);
    EXPECT_EQ(lp_oracle(inst), 9);
    EXPECT_LE(res.support_size, sparsity_bound(inst));
    EXPECT_EQ(sparsity_bound(inst), 3u);
    EXPECT_TRUE(validate_combination(res.measure, inst).ok());
    EXPECT_EQ(transport_cost(res.measure, inst), res.value);
}

TEST(Barycenter, SinglePointMeasures) {
    ProblemInstance inst;
    inst.d = 1;
    inst.weights = {Rational(1, 4), Rational(3, 4)};
    inst.measures = {{{{{Rational(0)}, 1}}}, {{{{Rational(4)}, 1}}}};
    auto res = solve_exact(inst);
    // (1/4)(3/4)*16
    EXPECT_EQ(res.value, 3);
    ASSERT_EQ(res.measure.entries.size(), 1u);
}

TEST(Barycenter, MatchesBasisEnumerationOracle) {
    wbtest::Gen g(31);
    for (int it = 0; it < 30; ++it) {
        // At most 8 tuples so the oracle stays cheap.
        auto inst = g.instance(3, static_cast<std::size_t>(g.integer(1, 2)), 2);
        auto res = solve_exact(inst);
        EXPECT_EQ(res.value, lp_oracle(inst));
    }
}

TEST(Barycenter, SparsityBoundsHold) {
    wbtest::Gen g(8);
    for (int it = 0; it < 40; ++it) {
        auto inst = g.instance(static_cast<std::size_t>(g.integer(2, 4)), 2, 3);
        auto res = solve_exact(inst);
        EXPECT_LE(res.support_size, sparsity_bound(inst));
        EXPECT_GE(res.support_size, max_size(inst));
        EXPECT_EQ(res.support_size, res.measure.entries.size());
        EXPECT_TRUE(validate_combination(res.measure, inst).ok());
    }
}

TEST(Barycenter, SpecialCasesAgreeWithLp) {
    wbtest::Gen g(12);
    for (int it = 0; it < 30; ++it) {
        auto one_d = g.instance(static_cast<std::size_t>(g.integer(2, 4)), 1, 3);
        auto r1 = solve_1d(one_d);
        EXPECT_EQ(r1.value, solve_exact(one_d).value);
        EXPECT_EQ(transport_cost(r1.measure, one_d), r1.value);

        auto two = g.instance(2, static_cast<std::size_t>(g.integer(1, 3)), 4);
        auto r2 = solve_2measures(two);
        EXPECT_EQ(r2.value, solve_exact(two).value);
        EXPECT_EQ(transport_cost(r2.measure, two), r2.value);
    }
}

TEST(Barycenter, SpecialCasesRejectWrongShape) {
    auto inst = gen_square_example(Rational(6));
    EXPECT_THROW(solve_1d(inst), std::invalid_argument);
    wbtest::Gen g(1);
    EXPECT_THROW(solve_2measures(g.instance(3, 1, 2)), std::invalid_argument);
}

TEST(Barycenter, CapExceededIsReported) {
    wbtest::Gen g(2);
    auto inst = g.instance(3, 1, 3);
    auto size = tuple_space_size(inst);
    if (size > 1) {
        EXPECT_THROW(solve_exact(inst, size.get_ui() - 1), CapExceeded);
    }
}

TEST(Decide, ScmpThresholds) {
    auto inst = gen_square_example(Rational(6));
    EXPECT_TRUE(decide_scmp(inst, 3, Rational(9)).yes);
    EXPECT_FALSE(decide_scmp(inst, 3, Rational(89, 10)).yes);
    // Two entries are needed because each measure has two slots.
    EXPECT_FALSE(decide_scmp(inst, 1, Rational(100)).yes);
    EXPECT_THROW(decide_scmp(inst, 4, Rational(9)), std::invalid_argument);
}

TEST(Decide, WitnessIsFeasible) {
    wbtest::Gen g(19);
    for (int it = 0; it < 15; ++it) {
        auto inst = g.instance(3, 2, 2);
        auto best = solve_exact(inst);
        auto dec = decide_scmp(inst, sparsity_bound(inst), best.value);
        ASSERT_TRUE(dec.yes);
        ASSERT_TRUE(dec.witness);
        EXPECT_LE(transport_cost(*dec.witness, inst), best.value);
    }
}

TEST(Decide, Uc3pPerfectMatchingOnTriangles) {
    // Two copies of the 3-4-5 triangle, far apart. Uniform masses 1/2.
    ProblemInstance inst;
    inst.d = 2;
    inst.weights = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    inst.measures = {{{{{0, 0}, Rational(1, 2)}, {{100, 0}, Rational(1, 2)}}},
                     {{{{3, 0}, Rational(1, 2)}, {{103, 0}, Rational(1, 2)}}},
                     {{{{0, 4}, Rational(1, 2)}, {{100, 4}, Rational(1, 2)}}}};
    auto yes = uc3p_bruteforce(inst, Rational(50, 9));
    ASSERT_TRUE(yes.yes);
    EXPECT_EQ(transport_cost(*yes.witness, inst), Rational(50, 9));
    EXPECT_FALSE(uc3p_bruteforce(inst, Rational(49, 9)).yes);
}
