#pragma once
#include <string>
#include <utility>
#include <vector>

#include "wb/rational.hpp"

namespace wb {

struct SparseColumn {
    std::vector<std::pair<int, Rational>> entries;  // (row, coefficient)
};

// minimize c.x subject to A x = b, x >= 0. Stored column-wise because the
// barycenter programs have many more columns than rows.
struct LinearProgram {
    std::size_t rows = 0;
    std::vector<SparseColumn> cols;
    std::vector<Rational> cost;
    std::vector<Rational> rhs;

    std::size_t num_vars() const { return cols.size(); }
    static LinearProgram from_dense(const std::vector<std::vector<Rational>>& A,
                                    const std::vector<Rational>& b, const std::vector<Rational>& c);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
std::string to_string(LpStatus s);

enum class PricingRule {
    Bland,         // smallest index with negative reduced cost
    DantzigBland,  // most negative, falling back to Bland while stalled on degenerate pivots
};

struct LpOptions {
    PricingRule pricing = PricingRule::Bland;
    std::size_t degenerate_switch = 30;
};

struct BasicSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> values;
    std::vector<int> basis;         // sorted variable indices
    Rational objective;
    std::vector<Rational> duals;    // one per original row; zero on dropped rows
    std::vector<int> kept_rows;     // rows left after redundancy removal
    std::size_t iterations = 0;
};

BasicSolution solve_lp(const LinearProgram& lp, const LpOptions& opt = {});

// Independent re-check of an optimal answer: primal feasibility, support within
// the basis, basis size equal to the rank, and nonnegative reduced costs.
bool check_optimality(const LinearProgram& lp, const BasicSolution& sol, std::string* why = nullptr);

struct TransportCell {
    int s = 0;
    int t = 0;
    Rational mass;
};

struct TransportationSolution {
    std::vector<TransportCell> flows;  // positive entries, row-major order
    std::vector<std::pair<int, int>> basis;
    Rational value;
    std::size_t iterations = 0;
};

// Transportation simplex (northwest corner start, tree duals, Bland pivots).
// The returned support is a forest in the bipartite supply/demand graph.
TransportationSolution solve_transportation(const std::vector<Rational>& supplies,
                                            const std::vector<Rational>& demands,
                                            const std::vector<std::vector<Rational>>& costs);

LinearProgram transportation_lp(const std::vector<Rational>& supplies, const std::vector<Rational>& demands,
                                const std::vector<std::vector<Rational>>& costs);

}  // namespace wb
