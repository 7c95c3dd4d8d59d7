#include "wb/lp.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace wb {

LinearProgram LinearProgram::from_dense(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                                        const std::vector<Rational>& c) {
    LinearProgram lp;
    lp.rows = A.size();
    lp.rhs = b;
    lp.cost = c;
    lp.cols.resize(c.size());
    for (std::size_t r = 0; r < A.size(); ++r) {
        if (A[r].size() != c.size()) throw std::invalid_argument("row " + std::to_string(r) + " has wrong length");
        for (std::size_t j = 0; j < c.size(); ++j)
            if (A[r][j] != 0) lp.cols[j].entries.emplace_back(static_cast<int>(r), A[r][j]);
    }
    return lp;
}

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

void check_dims(const LinearProgram& lp) {
    if (lp.cost.size() != lp.cols.size())
        throw std::invalid_argument("cost vector length " + std::to_string(lp.cost.size()) + " != columns " +
                                    std::to_string(lp.cols.size()));
    if (lp.rhs.size() != lp.rows)
        throw std::invalid_argument("rhs length " + std::to_string(lp.rhs.size()) + " != rows " +
                                    std::to_string(lp.rows));
    for (std::size_t j = 0; j < lp.cols.size(); ++j)
        for (const auto& [r, a] : lp.cols[j].entries)
            if (r < 0 || static_cast<std::size_t>(r) >= lp.rows)
                throw std::invalid_argument("column " + std::to_string(j) + " references row " + std::to_string(r));
}

// Revised simplex over an explicit dense basis inverse. Variables 0..n-1 are
// structural, n..n+R-1 are the artificials of Phase 1.
class Simplex {
public:
    Simplex(const LinearProgram& lp, const LpOptions& opt) : lp_(lp), opt_(opt), R_(lp.rows), n_(lp.cols.size()) {
        sign_.assign(R_, 1);
        b_.resize(R_);
        for (std::size_t r = 0; r < R_; ++r) {
            b_[r] = lp.rhs[r];
            if (b_[r] < 0) {
                sign_[r] = -1;
                b_[r] = -b_[r];
            }
        }
        // Integer images of the columns for exact pricing.
        K_ = 1;
        for (std::size_t j = 0; j < n_; ++j) {
            K_ = lcm(K_, lp.cost[j].get_den());
            for (const auto& e : lp.cols[j].entries) K_ = lcm(K_, e.second.get_den());
        }
        colint_.resize(n_);
        cint_.resize(n_);
        unit_.assign(n_, true);
        for (std::size_t j = 0; j < n_; ++j) {
            Rational kc = lp.cost[j] * Rational(K_);
            cint_[j] = kc.get_num();
            for (const auto& [r, a] : lp.cols[j].entries) {
                Rational ka = a * Rational(K_) * sign_[r];
                colint_[j].emplace_back(r, ka.get_num());
                if (a * sign_[r] != 1) unit_[j] = false;
            }
        }
        Binv_.assign(R_, std::vector<Rational>(R_, Rational(0)));
        for (std::size_t r = 0; r < R_; ++r) Binv_[r][r] = 1;
        basis_.resize(R_);
        for (std::size_t r = 0; r < R_; ++r) basis_[r] = static_cast<int>(n_ + r);
        xB_ = b_;
        inbasis_.assign(n_ + R_, -1);
        for (std::size_t r = 0; r < R_; ++r) inbasis_[n_ + r] = static_cast<int>(r);
        retired_.assign(R_, false);
    }

    BasicSolution run() {
        BasicSolution sol;
        // Phase 1: minimize the sum of artificials.
        phase_ = 1;
        auto st = iterate();
        (void)st;
        Rational infeas = 0;
        for (std::size_t i = 0; i < R_; ++i)
            if (is_art(basis_[i])) infeas += xB_[i];
        sol.iterations = iters_;
        if (infeas > 0) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        drive_out_artificials();
        phase_ = 2;
        st = iterate();
        sol.iterations = iters_;
        if (st == LpStatus::Unbounded) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        sol.status = LpStatus::Optimal;
        sol.values.assign(n_, Rational(0));
        for (std::size_t i = 0; i < R_; ++i) {
            if (is_art(basis_[i])) continue;
            sol.values[basis_[i]] = xB_[i];
            sol.basis.push_back(basis_[i]);
        }
        std::sort(sol.basis.begin(), sol.basis.end());
        sol.objective = 0;
        for (std::size_t j = 0; j < n_; ++j)
            if (sol.values[j] != 0) sol.objective += lp_.cost[j] * sol.values[j];
        auto y = duals();
        sol.duals.resize(R_);
        for (std::size_t r = 0; r < R_; ++r) sol.duals[r] = y[r] * sign_[r];
        for (std::size_t r = 0; r < R_; ++r)
            if (!redundant_row(r)) sol.kept_rows.push_back(static_cast<int>(r));
        return sol;
    }

private:
    bool is_art(int v) const { return static_cast<std::size_t>(v) >= n_; }

    bool redundant_row(std::size_t r) const {
        int pos = inbasis_[n_ + r];
        return pos >= 0;  // artificial still basic after drive-out means a dependent row
    }

    Rational cost_of(int v) const {
        if (phase_ == 1) return is_art(v) ? Rational(1) : Rational(0);
        return is_art(v) ? Rational(0) : lp_.cost[v];
    }

    std::vector<Rational> duals() const {
        std::vector<Rational> y(R_, Rational(0));
        for (std::size_t i = 0; i < R_; ++i) {
            Rational cb = cost_of(basis_[i]);
            if (cb == 0) continue;
            const auto& row = Binv_[i];
            for (std::size_t r = 0; r < R_; ++r)
                if (row[r] != 0) y[r] += cb * row[r];
        }
        return y;
    }

    // Returns the entering variable or -1. Pricing is done on integers:
    // d_j * K * den = cint_j * den - sum_r colint_rj * Y_r.
    int price(bool bland) {
        auto y = duals();
        Integer den = 1;
        for (const auto& v : y) den = lcm(den, v.get_den());
        std::vector<Integer> Y(R_);
        for (std::size_t r = 0; r < R_; ++r) Y[r] = y[r].get_num() * (den / y[r].get_den());
        int best = -1;
        Integer bestval = 0, acc, val;
        for (std::size_t j = 0; j < n_; ++j) {
            if (inbasis_[j] >= 0) continue;
            acc = 0;
            if (unit_[j]) {
                for (const auto& e : colint_[j]) acc += Y[e.first];
                acc *= K_;
            } else {
                for (const auto& e : colint_[j]) acc += e.second * Y[e.first];
            }
            if (phase_ == 2)
                val = cint_[j] * den - acc;
            else
                val = -acc;
            if (val < 0) {
                if (bland) return static_cast<int>(j);
                if (best < 0 || val < bestval) {
                    best = static_cast<int>(j);
                    bestval = val;
                }
            }
        }
        return best;
    }

    std::vector<Rational> column(int j) const {
        std::vector<Rational> u(R_, Rational(0));
        if (is_art(j)) {
            std::size_t r = j - n_;
            for (std::size_t i = 0; i < R_; ++i) u[i] = Binv_[i][r];
            return u;
        }
        for (const auto& [r, a] : lp_.cols[j].entries) {
            Rational sa = a * sign_[r];
            for (std::size_t i = 0; i < R_; ++i)
                if (Binv_[i][r] != 0) u[i] += sa * Binv_[i][r];
        }
        return u;
    }

    void pivot(std::size_t p, int j, const std::vector<Rational>& u) {
        Rational piv = u[p];
        auto& rowp = Binv_[p];
        std::vector<std::size_t> nz;
        for (std::size_t r = 0; r < R_; ++r)
            if (rowp[r] != 0) {
                rowp[r] /= piv;
                nz.push_back(r);
            }
        xB_[p] /= piv;
        for (std::size_t i = 0; i < R_; ++i) {
            if (i == p || u[i] == 0) continue;
            const Rational f = u[i];
            auto& row = Binv_[i];
            for (std::size_t r : nz) row[r] -= f * rowp[r];
            xB_[i] -= f * xB_[p];
        }
        inbasis_[basis_[p]] = -1;
        basis_[p] = j;
        inbasis_[j] = static_cast<int>(p);
    }

    LpStatus iterate() {
        std::size_t degenerate_run = 0;
        bool bland_mode = opt_.pricing == PricingRule::Bland;
        while (true) {
            int j = price(bland_mode);
            if (j < 0) return LpStatus::Optimal;
            auto u = column(j);
            int p = -1;
            Rational best;
            for (std::size_t i = 0; i < R_; ++i) {
                if (u[i] <= 0) continue;
                Rational ratio = xB_[i] / u[i];
                if (p < 0 || ratio < best || (ratio == best && basis_[i] < basis_[p])) {
                    p = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (p < 0) return LpStatus::Unbounded;
            ++iters_;
            pivot(p, j, u);
            if (opt_.pricing == PricingRule::DantzigBland) {
                if (best == 0) {
                    if (++degenerate_run >= opt_.degenerate_switch) bland_mode = true;
                } else {
                    degenerate_run = 0;
                    bland_mode = false;
                }
            }
        }
    }

    void drive_out_artificials() {
        for (std::size_t p = 0; p < R_; ++p) {
            if (!is_art(basis_[p])) continue;
            const auto& row = Binv_[p];
            for (std::size_t j = 0; j < n_; ++j) {
                if (inbasis_[j] >= 0) continue;
                Rational v = 0;
                for (const auto& [r, a] : lp_.cols[j].entries)
                    if (row[r] != 0) v += a * sign_[r] * row[r];
                if (v != 0) {
                    pivot(p, static_cast<int>(j), column(static_cast<int>(j)));
                    ++iters_;
                    break;
                }
            }
        }
    }

    const LinearProgram& lp_;
    LpOptions opt_;
    std::size_t R_, n_;
    std::vector<int> sign_;
    std::vector<Rational> b_;
    Integer K_;
    std::vector<std::vector<std::pair<int, Integer>>> colint_;
    std::vector<Integer> cint_;
    std::vector<bool> unit_;
    std::vector<std::vector<Rational>> Binv_;
    std::vector<int> basis_;
    std::vector<int> inbasis_;
    std::vector<Rational> xB_;
    std::vector<bool> retired_;
    int phase_ = 1;
    std::size_t iters_ = 0;
};

// Rank of a small dense matrix by fraction-exact elimination.
std::size_t dense_rank(std::vector<std::vector<Rational>> M) {
    std::size_t rank = 0;
    const std::size_t rows = M.size();
    const std::size_t cols = rows ? M[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (M[r][c] == 0) continue;
            Rational f = M[r][c] / M[rank][c];
            for (std::size_t k = c; k < cols; ++k) M[r][k] -= f * M[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

BasicSolution solve_lp(const LinearProgram& lp, const LpOptions& opt) {
    check_dims(lp);
    Simplex s(lp, opt);
    return s.run();
}

bool check_optimality(const LinearProgram& lp, const BasicSolution& sol, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (sol.status != LpStatus::Optimal) return fail("status is not optimal");
    if (sol.values.size() != lp.num_vars()) return fail("value vector has wrong length");
    std::vector<Rational> lhs(lp.rows, Rational(0));
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        if (sol.values[j] < 0) return fail("negative value at " + std::to_string(j));
        if (sol.values[j] == 0) continue;
        if (!std::binary_search(sol.basis.begin(), sol.basis.end(), static_cast<int>(j)))
            return fail("nonzero variable " + std::to_string(j) + " outside the basis");
        for (const auto& [r, a] : lp.cols[j].entries) lhs[r] += a * sol.values[j];
    }
    for (std::size_t r = 0; r < lp.rows; ++r)
        if (lhs[r] != lp.rhs[r]) return fail("row " + std::to_string(r) + " not satisfied");
    if (sol.basis.size() != sol.kept_rows.size()) return fail("basis size differs from rank");
    // Basis columns restricted to kept rows must be independent.
    std::vector<std::vector<Rational>> B(sol.kept_rows.size(), std::vector<Rational>(sol.basis.size()));
    std::vector<int> rowpos(lp.rows, -1);
    for (std::size_t i = 0; i < sol.kept_rows.size(); ++i) rowpos[sol.kept_rows[i]] = static_cast<int>(i);
    for (std::size_t c = 0; c < sol.basis.size(); ++c)
        for (const auto& [r, a] : lp.cols[sol.basis[c]].entries)
            if (rowpos[r] >= 0) B[rowpos[r]][c] = a;
    if (dense_rank(B) != sol.basis.size()) return fail("basis columns are dependent");
    Rational obj = 0;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        Rational d = lp.cost[j];
        for (const auto& [r, a] : lp.cols[j].entries) d -= a * sol.duals[r];
        if (d < 0) return fail("negative reduced cost at " + std::to_string(j));
        if (sol.values[j] != 0 && d != 0) return fail("complementary slackness fails at " + std::to_string(j));
        obj += lp.cost[j] * sol.values[j];
    }
    if (obj != sol.objective) return fail("objective mismatch");
    return true;
}

LinearProgram transportation_lp(const std::vector<Rational>& supplies, const std::vector<Rational>& demands,
                                const std::vector<std::vector<Rational>>& costs) {
    LinearProgram lp;
    const std::size_t m1 = supplies.size(), m2 = demands.size();
    lp.rows = m1 + m2;
    lp.rhs = supplies;
    lp.rhs.insert(lp.rhs.end(), demands.begin(), demands.end());
    for (std::size_t s = 0; s < m1; ++s)
        for (std::size_t t = 0; t < m2; ++t) {
            SparseColumn c;
            c.entries = {{static_cast<int>(s), Rational(1)}, {static_cast<int>(m1 + t), Rational(1)}};
            lp.cols.push_back(std::move(c));
            lp.cost.push_back(costs[s][t]);
        }
    return lp;
}

TransportationSolution solve_transportation(const std::vector<Rational>& supplies,
                                            const std::vector<Rational>& demands,
                                            const std::vector<std::vector<Rational>>& costs) {
    const std::size_t m1 = supplies.size(), m2 = demands.size();
    if (m1 == 0 || m2 == 0) throw std::invalid_argument("empty supply or demand side");
    if (costs.size() != m1) throw std::invalid_argument("cost matrix has wrong number of rows");
    for (const auto& row : costs)
        if (row.size() != m2) throw std::invalid_argument("cost matrix has wrong number of columns");
    Rational ts = 0, td = 0;
    for (const auto& s : supplies) {
        if (s < 0) throw std::invalid_argument("negative supply");
        ts += s;
    }
    for (const auto& d : demands) {
        if (d < 0) throw std::invalid_argument("negative demand");
        td += d;
    }
    if (ts != td) throw std::invalid_argument("unbalanced totals: " + to_string(ts) + " vs " + to_string(td));

    // flow[s][t], basic flag. Northwest corner gives a spanning tree of m1+m2-1 cells.
    std::vector<std::vector<Rational>> flow(m1, std::vector<Rational>(m2, Rational(0)));
    std::vector<std::vector<bool>> basic(m1, std::vector<bool>(m2, false));
    {
        auto s = supplies;
        auto d = demands;
        std::size_t i = 0, j = 0;
        while (true) {
            Rational f = std::min(s[i], d[j]);
            flow[i][j] = f;
            basic[i][j] = true;
            s[i] -= f;
            d[j] -= f;
            if (i == m1 - 1 && j == m2 - 1) break;
            if (i < m1 - 1 && (s[i] == 0 || j == m2 - 1))
                ++i;
            else
                ++j;
        }
    }

    TransportationSolution out;
    const std::size_t N = m1 + m2;  // tree nodes: rows 0..m1-1, columns m1..
    while (true) {
        // Tree adjacency and potentials u (rows), v (columns) with u_0 = 0.
        std::vector<std::vector<std::size_t>> adj(N);
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < m2; ++j)
                if (basic[i][j]) {
                    adj[i].push_back(m1 + j);
                    adj[m1 + j].push_back(i);
                }
        std::vector<Rational> pot(N);
        std::vector<bool> seen(N, false);
        std::deque<std::size_t> q{0};
        seen[0] = true;
        while (!q.empty()) {
            std::size_t a = q.front();
            q.pop_front();
            for (std::size_t b : adj[a]) {
                if (seen[b]) continue;
                seen[b] = true;
                if (a < m1)
                    pot[b] = costs[a][b - m1] - pot[a];
                else
                    pot[b] = costs[b][a - m1] - pot[a];
                q.push_back(b);
            }
        }
        // Bland: first cell in row-major order with negative reduced cost.
        int ei = -1, ej = -1;
        for (std::size_t i = 0; i < m1 && ei < 0; ++i)
            for (std::size_t j = 0; j < m2; ++j)
                if (!basic[i][j] && costs[i][j] - pot[i] - pot[m1 + j] < 0) {
                    ei = static_cast<int>(i);
                    ej = static_cast<int>(j);
                    break;
                }
        if (ei < 0) break;
        // Tree path from column node ej back to row node ei.
        std::vector<long> parent(N, -1);
        std::vector<bool> vis(N, false);
        std::deque<std::size_t> bq{static_cast<std::size_t>(ei)};
        vis[ei] = true;
        while (!bq.empty()) {
            std::size_t a = bq.front();
            bq.pop_front();
            for (std::size_t b : adj[a])
                if (!vis[b]) {
                    vis[b] = true;
                    parent[b] = static_cast<long>(a);
                    bq.push_back(b);
                }
        }
        // Cycle cells: entering (ei,ej) is +, then alternate along the path ej -> ... -> ei.
        std::vector<std::pair<std::size_t, std::size_t>> minus, plus;
        std::size_t node = m1 + ej;
        bool sign_minus = true;
        while (static_cast<long>(node) != ei) {
            std::size_t pr = static_cast<std::size_t>(parent[node]);
            std::pair<std::size_t, std::size_t> cell =
                node >= m1 ? std::make_pair(pr, node - m1) : std::make_pair(node, pr - m1);
            (sign_minus ? minus : plus).push_back(cell);
            sign_minus = !sign_minus;
            node = pr;
        }
        Rational theta;
        std::pair<std::size_t, std::size_t> leave{m1, m2};
        for (const auto& c : minus) {
            const Rational& f = flow[c.first][c.second];
            bool better = leave.first == m1 || f < theta ||
                          (f == theta && c.first * m2 + c.second < leave.first * m2 + leave.second);
            if (better) {
                theta = f;
                leave = c;
            }
        }
        for (const auto& c : minus) flow[c.first][c.second] -= theta;
        for (const auto& c : plus) flow[c.first][c.second] += theta;
        flow[ei][ej] += theta;
        basic[ei][ej] = true;
        basic[leave.first][leave.second] = false;
        ++out.iterations;
    }
    out.value = 0;
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m2; ++j) {
            if (basic[i][j]) out.basis.emplace_back(static_cast<int>(i), static_cast<int>(j));
            if (flow[i][j] > 0) {
                out.flows.push_back({static_cast<int>(i), static_cast<int>(j), flow[i][j]});
                out.value += flow[i][j] * costs[i][j];
            }
        }
    return out;
}

}  // namespace wb
