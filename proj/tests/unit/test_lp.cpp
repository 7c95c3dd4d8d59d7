#include <gtest/gtest.h>

#include "gen.hpp"
#include "wb/lp.hpp"

using namespace wb;
using R = Rational;

namespace {

LinearProgram random_feasible_lp(wbtest::Gen& g, std::size_t rows, std::size_t cols) {
    // b = A x0 for a nonnegative x0 guarantees feasibility; nonnegative costs keep it bounded.
    std::vector<std::vector<R>> A(rows, std::vector<R>(cols));
    std::vector<R> x0(cols), b(rows, 0), c(cols);
    for (auto& x : x0) x = g.integer(0, 3);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < cols; ++j) {
            A[r][j] = g.integer(-2, 3);
            b[r] += A[r][j] * x0[j];
        }
    for (auto& v : c) {
        v = R(g.integer(0, 9), g.integer(1, 4));
        v.canonicalize();
    }
    // One all-positive row bounds the region.
    std::vector<R> bound_row(cols, 1);
    R total = 0;
    for (auto& x : x0) total += x;
    A.push_back(bound_row);
    b.push_back(total);
    return LinearProgram::from_dense(A, b, c);
}

}  // namespace

TEST(Lp, TextbookOptimum) {
    // min -x - y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    auto lp = LinearProgram::from_dense({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {-1, -1, 0, 0});
    auto sol = solve_lp(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_EQ(sol.objective, R(-14, 5));
    EXPECT_EQ(sol.values[0], R(8, 5));
    EXPECT_EQ(sol.values[1], R(6, 5));
    std::string why;
    EXPECT_TRUE(check_optimality(lp, sol, &why)) << why;
}

TEST(Lp, Infeasible) {
    auto lp = LinearProgram::from_dense({{1, 1}}, {-1}, {0, 0});
    EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(Lp, Unbounded) {
    auto lp = LinearProgram::from_dense({{1, -1}}, {1}, {0, -1});
    EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(Lp, RedundantRowsAreDropped) {
    auto lp = LinearProgram::from_dense({{1, 1, 0}, {0, 0, 1}, {1, 1, 1}}, {1, 2, 3}, {1, 2, 0});
    auto sol = solve_lp(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_EQ(sol.objective, 1);
    EXPECT_EQ(sol.kept_rows.size(), 2u);
    EXPECT_EQ(sol.basis.size(), 2u);
    EXPECT_TRUE(check_optimality(lp, sol));
}

// Beale's example cycles under textbook Dantzig pricing without an anti-cycling rule.
TEST(Lp, BealeDoesNotCycle) {
    std::vector<std::vector<R>> A = {
        {R(1, 4), -8, -1, 9, 1, 0, 0},
        {R(1, 2), -12, R(-1, 2), 3, 0, 1, 0},
        {0, 0, 1, 0, 0, 0, 1},
    };
    std::vector<R> b = {0, 0, 1};
    std::vector<R> c = {R(-3, 4), 20, R(-1, 2), 6, 0, 0, 0};
    auto lp = LinearProgram::from_dense(A, b, c);
    for (auto rule : {PricingRule::Bland, PricingRule::DantzigBland}) {
        auto sol = solve_lp(lp, {rule, 3});
        ASSERT_EQ(sol.status, LpStatus::Optimal);
        EXPECT_EQ(sol.objective, R(-5, 4));
        EXPECT_TRUE(check_optimality(lp, sol));
    }
}

TEST(Lp, MatchesBasisEnumerationOracle) {
    wbtest::Gen g(77);
    for (int it = 0; it < 120; ++it) {
        auto lp = random_feasible_lp(g, static_cast<std::size_t>(g.integer(1, 3)), static_cast<std::size_t>(g.integer(2, 7)));
        auto oracle = wbtest::brute_force_lp(lp);
        ASSERT_TRUE(oracle.feasible);
        for (auto rule : {PricingRule::Bland, PricingRule::DantzigBland}) {
            auto sol = solve_lp(lp, {rule, 30});
            ASSERT_EQ(sol.status, LpStatus::Optimal);
            EXPECT_EQ(sol.objective, oracle.value);
            std::string why;
            EXPECT_TRUE(check_optimality(lp, sol, &why)) << why;
        }
    }
}

TEST(Lp, CheckOptimalityCatchesTampering) {
    auto lp = LinearProgram::from_dense({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {-1, -1, 0, 0});
    auto sol = solve_lp(lp);
    auto bad = sol;
    bad.values[0] += 1;
    EXPECT_FALSE(check_optimality(lp, bad));
    bad = sol;
    bad.duals[0] = 0;
    bad.duals[1] = 0;
    EXPECT_FALSE(check_optimality(lp, bad));
}

TEST(Transportation, MatchesLpOracle) {
    wbtest::Gen g(5);
    for (int it = 0; it < 80; ++it) {
        auto s = g.simplex(static_cast<std::size_t>(g.integer(1, 4)));
        auto d = g.simplex(static_cast<std::size_t>(g.integer(1, 4)));
        std::vector<std::vector<R>> C(s.size(), std::vector<R>(d.size()));
        for (auto& row : C)
            for (auto& v : row) v = g.integer(0, 20);
        auto ts = solve_transportation(s, d, C);
        auto oracle = wbtest::brute_force_lp(transportation_lp(s, d, C));
        ASSERT_TRUE(oracle.feasible);
        EXPECT_EQ(ts.value, oracle.value);
        // Support is a forest: at most |S| + |D| - 1 cells.
        EXPECT_LE(ts.flows.size(), s.size() + d.size() - 1);
        std::vector<R> out(s.size(), 0), in(d.size(), 0);
        for (const auto& f : ts.flows) {
            EXPECT_GT(f.mass, 0);
            out[static_cast<std::size_t>(f.s)] += f.mass;
            in[static_cast<std::size_t>(f.t)] += f.mass;
        }
        EXPECT_EQ(out, s);
        EXPECT_EQ(in, d);
    }
}

TEST(Transportation, DegenerateBalancedInput) {
    std::vector<R> s = {R(1, 2), R(1, 2)}, d = {R(1, 2), R(1, 2)};
    auto ts = solve_transportation(s, d, {{0, 1}, {1, 0}});
    EXPECT_EQ(ts.value, 0);
    EXPECT_EQ(ts.flows.size(), 2u);
}
