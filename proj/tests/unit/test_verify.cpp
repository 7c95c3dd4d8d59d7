#include <gtest/gtest.h>

#include "gen.hpp"
#include "wb/barycenter.hpp"
#include "wb/cost.hpp"
#include "wb/verify.hpp"

using namespace wb;

TEST(Verify, AcceptsSolverOutput) {
    wbtest::Gen g(100);
    for (int it = 0; it < 30; ++it) {
        auto inst = g.instance(static_cast<std::size_t>(g.integer(2, 4)), 2, 3);
        auto res = solve_exact(inst);
        auto rep = verify_scmp_certificate(res.measure, inst, sparsity_bound(inst), res.value);
        EXPECT_TRUE(rep.accepted()) << rep.details;
        EXPECT_EQ(rep.cost, res.value);
        EXPECT_TRUE(rep.non_mass_splitting);
    }
}

TEST(Verify, RejectsCostAboveBound) {
    auto inst = gen_square_example(Rational(6));
    auto res = solve_exact(inst);
    auto rep = verify_scmp_certificate(res.measure, inst, 3, Rational(8));
    EXPECT_FALSE(rep.accepted());
    EXPECT_TRUE(rep.valid);
    EXPECT_FALSE(rep.cost_ok);
}

TEST(Verify, RejectsCorruptions) {
    wbtest::Gen g(101);
    for (int it = 0; it < 30; ++it) {
        auto inst = g.instance(3, 2, 3);
        auto res = solve_exact(inst);
        const auto N = sparsity_bound(inst);

        auto wrong_mass = res.measure;
        wrong_mass.entries[0].mass += Rational(1, 97);
        EXPECT_FALSE(verify_scmp_certificate(wrong_mass, inst, N, Rational(1000000)).accepted());

        auto wrong_tuple = res.measure;
        wrong_tuple.entries[0].tuple[0] = static_cast<int>(inst.measures[0].size());
        EXPECT_FALSE(verify_scmp_certificate(wrong_tuple, inst, N, Rational(1000000)).accepted());

        auto too_small_n = verify_scmp_certificate(res.measure, inst, res.support_size - 1, res.value);
        EXPECT_FALSE(too_small_n.accepted());
        EXPECT_FALSE(too_small_n.sparsity_ok);

        // Splitting one entry into two copies of the same tuple inflates the support.
        auto split = res.measure;
        auto e = split.entries[0];
        split.entries[0].mass = e.mass / 2;
        e.mass /= 2;
        split.entries.push_back(e);
        EXPECT_FALSE(verify_scmp_certificate(split, inst, N + 1, Rational(1000000)).accepted());
    }
}

TEST(Verify, ReportJsonMirrorsFields) {
    auto inst = gen_square_example(Rational(6));
    auto res = solve_exact(inst);
    auto j = verify_scmp_certificate(res.measure, inst, 3, Rational(9)).to_json();
    EXPECT_EQ(j["accepted"], true);
    EXPECT_EQ(j["cost"], "9");
    EXPECT_EQ(j["support_size"], res.support_size);
}

TEST(Plan, FixedSupportRecoversNonSplittingPlan) {
    wbtest::Gen g(102);
    for (int it = 0; it < 25; ++it) {
        auto inst = g.instance(3, 2, 3);
        auto res = solve_exact(inst);
        auto support = from_combination(res.measure, inst);
        auto pr = optimal_plan_for_support(support, inst);
        EXPECT_EQ(pr.value, res.value);
        EXPECT_TRUE(validate_plan(pr.plan, support, inst).ok());
        EXPECT_EQ(plan_cost(support, pr.plan, inst), pr.value);
        EXPECT_TRUE(is_non_mass_splitting(pr.plan).ok);
        auto back = to_combination(support, inst);
        ASSERT_TRUE(back.ok) << back.reason;
        EXPECT_EQ(transport_cost(back.measure, inst), res.value);
    }
}

// The plan LP can only improve on the plan a combination measure induces.
TEST(Plan, NeverWorseThanInducedPlan) {
    wbtest::Gen g(103);
    for (int it = 0; it < 25; ++it) {
        auto inst = g.instance(static_cast<std::size_t>(g.integer(2, 3)), 2, 3);
        auto P = wbtest::northwest_corner(inst);
        auto support = from_combination(P, inst);
        auto induced = induced_plan(P, inst);
        EXPECT_TRUE(validate_plan(induced, support, inst).ok());
        EXPECT_EQ(plan_cost(support, induced, inst), transport_cost(P, inst));
        EXPECT_LE(optimal_plan_for_support(support, inst).value, transport_cost(P, inst));
    }
}

TEST(Plan, SplittingDetected) {
    TransportPlan plan{{{0, 0, 0, Rational(1, 4)}, {0, 0, 1, Rational(1, 4)}, {0, 1, 0, Rational(1, 2)}}};
    auto s = is_non_mass_splitting(plan);
    EXPECT_FALSE(s.ok);
    ASSERT_EQ(s.violations.size(), 1u);
    EXPECT_EQ(s.violations[0], std::make_pair(0, 0));
}

TEST(Combination, CoincidentMeansMerge) {
    auto inst = gen_square_example(Rational(6));
    // Both diagonal pairings have their mean at the center.
    ProblemInstance diag = inst;
    diag.measures[1].points[0].coords = {6, 6};
    diag.measures[1].points[1].coords = {0, 0};
    CombinationMeasure P{{{{0, 0}, Rational(1, 2)}, {{1, 1}, Rational(1, 2)}}};
    auto bar = from_combination(P, diag);
    ASSERT_EQ(bar.size(), 1u);
    EXPECT_EQ(bar.points[0].coords, (Point{3, 3}));
    EXPECT_EQ(bar.points[0].mass, 1);
}

TEST(Combination, NonBarycenterSupportFailsCleanly) {
    auto inst = gen_square_example(Rational(6));
    // A single point at the grand mean cannot be served without splitting.
    DiscreteMeasure P{{{{3, 3}, 1}}};
    auto r = to_combination(P, inst);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.reason.empty());
}
