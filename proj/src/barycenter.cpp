#include "wb/barycenter.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "wb/cost.hpp"

namespace wb {

std::size_t sparsity_bound(const ProblemInstance& inst) {
    std::size_t s = 0;
    for (const auto& mu : inst.measures) s += mu.size();
    return s - inst.m() + 1;
}

LinearProgram barycenter_lp(const ProblemInstance& inst, const std::vector<Tuple>& tuples) {
    LinearProgram lp;
    std::vector<int> offset(inst.m(), 0);
    std::size_t rows = 0;
    for (std::size_t i = 0; i < inst.m(); ++i) {
        offset[i] = static_cast<int>(rows);
        rows += inst.measures[i].size();
        for (const auto& s : inst.measures[i].points) lp.rhs.push_back(s.mass);
    }
    lp.rows = rows;
    lp.cols.reserve(tuples.size());
    lp.cost.reserve(tuples.size());
    for (const auto& t : tuples) {
        SparseColumn c;
        for (std::size_t i = 0; i < inst.m(); ++i) c.entries.emplace_back(offset[i] + t[i], Rational(1));
        lp.cols.push_back(std::move(c));
        lp.cost.push_back(tuple_cost_pairwise(t, inst));
    }
    return lp;
}

namespace {
void require_valid(const ProblemInstance& inst) {
    Report r = validate_instance(inst);
    if (!r.ok()) throw std::invalid_argument("invalid instance: " + r.str());
}

BarycenterResult finish(CombinationMeasure P, const ProblemInstance& inst) {
    std::sort(P.entries.begin(), P.entries.end(),
              [](const CombinationEntry& a, const CombinationEntry& b) { return a.tuple < b.tuple; });
    BarycenterResult res;
    res.value = 0;
    for (const auto& e : P.entries) res.value += tuple_cost_pairwise(e.tuple, inst) * e.mass;
    res.support_size = P.entries.size();
    res.measure = std::move(P);
    return res;
}
}  // namespace

BarycenterResult solve_exact(const ProblemInstance& inst, std::uint64_t cap, const LpOptions& opt) {
    require_valid(inst);
    auto tuples = enumerate_tuples(inst, cap);
    LinearProgram lp = barycenter_lp(inst, tuples);
    BasicSolution sol = solve_lp(lp, opt);
    if (sol.status != LpStatus::Optimal)
        throw std::logic_error("barycenter LP reported " + to_string(sol.status));
    CombinationMeasure P;
    for (std::size_t j = 0; j < tuples.size(); ++j)
        if (sol.values[j] > 0) P.entries.push_back({tuples[j], sol.values[j]});
    auto res = finish(std::move(P), inst);
    if (res.value != sol.objective) throw std::logic_error("objective mismatch in solve_exact");
    return res;
}

BarycenterResult solve_1d(const ProblemInstance& inst) {
    require_valid(inst);
    if (inst.d != 1) throw std::invalid_argument("solve_1d needs d = 1");
    const std::size_t m = inst.m();
    std::vector<std::vector<int>> order(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto& o = order[i];
        o.resize(inst.measures[i].size());
        std::iota(o.begin(), o.end(), 0);
        const auto& pts = inst.measures[i].points;
        std::stable_sort(o.begin(), o.end(), [&](int a, int b) { return pts[a].coords[0] < pts[b].coords[0]; });
    }
    std::vector<std::size_t> ptr(m, 0);
    std::vector<Rational> rem(m);
    for (std::size_t i = 0; i < m; ++i) rem[i] = inst.measures[i].points[order[i][0]].mass;
    CombinationMeasure P;
    while (true) {
        Rational delta = rem[0];
        for (std::size_t i = 1; i < m; ++i) delta = std::min(delta, rem[i]);
        Tuple t(m);
        for (std::size_t i = 0; i < m; ++i) t[i] = order[i][ptr[i]];
        P.entries.push_back({t, delta});
        bool done = false;
        for (std::size_t i = 0; i < m; ++i) {
            rem[i] -= delta;
            if (rem[i] == 0) {
                if (++ptr[i] == order[i].size()) {
                    done = true;
                    continue;
                }
                rem[i] = inst.measures[i].points[order[i][ptr[i]]].mass;
            }
        }
        if (done) break;
    }
    return finish(std::move(P), inst);
}

BarycenterResult solve_2measures(const ProblemInstance& inst) {
    require_valid(inst);
    if (inst.m() != 2) throw std::invalid_argument("solve_2measures needs m = 2");
    const auto& a = inst.measures[0].points;
    const auto& b = inst.measures[1].points;
    std::vector<Rational> sup, dem;
    for (const auto& s : a) sup.push_back(s.mass);
    for (const auto& s : b) dem.push_back(s.mass);
    std::vector<std::vector<Rational>> C(a.size(), std::vector<Rational>(b.size()));
    for (std::size_t s = 0; s < a.size(); ++s)
        for (std::size_t t = 0; t < b.size(); ++t)
            C[s][t] = tuple_cost_pairwise({static_cast<int>(s), static_cast<int>(t)}, inst);
    auto ts = solve_transportation(sup, dem, C);
    CombinationMeasure P;
    for (const auto& f : ts.flows) P.entries.push_back({{f.s, f.t}, f.mass});
    return finish(std::move(P), inst);
}

Decision decide_scmp(const ProblemInstance& inst, std::size_t N, const Rational& phi, std::uint64_t cap,
                     std::uint64_t subset_guard) {
    require_valid(inst);
    if (N > sparsity_bound(inst))
        throw std::invalid_argument("N exceeds the sparsity bound " + std::to_string(sparsity_bound(inst)));
    Decision dec;
    std::size_t maxsize = 0;
    for (const auto& mu : inst.measures) maxsize = std::max(maxsize, mu.size());
    if (N < maxsize) {
        dec.note = "N below max |P_i|; every combination measure needs at least that many tuples";
        return dec;
    }
    auto best = solve_exact(inst, cap);
    if (best.value > phi) {
        dec.note = "optimal value " + to_string(best.value) + " exceeds phi";
        return dec;
    }
    if (best.support_size <= N) {
        dec.yes = true;
        dec.witness = best.measure;
        dec.note = "LP vertex satisfies both bounds";
        return dec;
    }
    // Exhaustive search over N-subsets of S*; smaller supports are covered
    // because the restricted LP may leave columns at zero.
    auto tuples = enumerate_tuples(inst, cap);
    const std::size_t T = tuples.size();
    const std::size_t k = std::min(N, T);
    Integer count;
    mpz_bin_uiui(count.get_mpz_t(), T, k);
    if (count > Integer(std::to_string(subset_guard)))
        throw GuardExceeded("subset search needs C(" + std::to_string(T) + "," + std::to_string(k) +
                            ") = " + count.get_str() + " LPs, guard is " + std::to_string(subset_guard));
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        ++dec.nodes;
        std::vector<Tuple> sub;
        for (auto i : idx) sub.push_back(tuples[i]);
        auto lp = barycenter_lp(inst, sub);
        auto sol = solve_lp(lp);
        if (sol.status == LpStatus::Optimal && sol.objective <= phi) {
            CombinationMeasure P;
            for (std::size_t j = 0; j < sub.size(); ++j)
                if (sol.values[j] > 0) P.entries.push_back({sub[j], sol.values[j]});
            dec.yes = true;
            dec.witness = finish(std::move(P), inst).measure;
            dec.note = "found by subset search";
            return dec;
        }
        // next combination in lexicographic order
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == T - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t r = i; r < k; ++r) idx[r] = idx[r - 1] + 1;
    }
    dec.note = "no subset of size " + std::to_string(k) + " attains phi";
    return dec;
}

namespace {

// Integer image of planar-or-not point sets: coordinates times a common
// denominator, so squared distances become exact 128-bit integers.
struct ScaledPoints {
    std::vector<std::vector<std::vector<long long>>> xs;  // [measure][slot][coord]
    Integer L;                                            // common denominator
};

ScaledPoints scale_points(const ProblemInstance& inst) {
    ScaledPoints sp;
    sp.L = 1;
    for (const auto& mu : inst.measures)
        for (const auto& s : mu.points)
            for (const auto& c : s.coords) mpz_lcm(sp.L.get_mpz_t(), sp.L.get_mpz_t(), c.get_den().get_mpz_t());
    const Integer lim = Integer(1) << 40;
    sp.xs.resize(inst.m());
    for (std::size_t i = 0; i < inst.m(); ++i)
        for (const auto& s : inst.measures[i].points) {
            std::vector<long long> p;
            for (const auto& c : s.coords) {
                Rational v = c * Rational(sp.L);
                Integer z = v.get_num();
                if (abs(z) >= lim) throw GuardExceeded("coordinates too large for the integer search kernel");
                p.push_back(z.get_si());
            }
            sp.xs[i].push_back(std::move(p));
        }
    return sp;
}

__int128 d2(const std::vector<long long>& a, const std::vector<long long>& b) {
    __int128 s = 0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        __int128 t = a[c] - b[c];
        s += t * t;
    }
    return s;
}

}  // namespace

Decision uc3p_bruteforce(const ProblemInstance& inst, const Rational& phi, std::uint64_t node_guard) {
    require_valid(inst);
    const Rational third(1, 3);
    if (inst.m() != 3 || inst.weights[0] != third || inst.weights[1] != third || inst.weights[2] != third)
        throw std::invalid_argument("uc3p needs m = 3 and weights (1/3,1/3,1/3)");
    const std::size_t n = inst.measures[0].size();
    for (const auto& mu : inst.measures) {
        if (mu.size() != n) throw std::invalid_argument("uc3p needs |P_1| = |P_2| = |P_3|");
        for (const auto& s : mu.points)
            if (s.mass != Rational(1, static_cast<long>(n))) throw std::invalid_argument("uc3p needs masses 1/n");
    }
    auto sp = scale_points(inst);
    // Triple cost = S / (9 L^2) with S the summed squared sides in scaled units.
    // Feasible iff sum S <= n * phi * 9 L^2 =: budget.
    Rational budget_q = Rational(static_cast<long>(n)) * phi * 9 * Rational(sp.L * sp.L);
    Integer budget_z;
    mpz_fdiv_q(budget_z.get_mpz_t(), budget_q.get_num_mpz_t(), budget_q.get_den_mpz_t());
    if (budget_z < 0) {
        Decision d;
        d.note = "phi is negative";
        return d;
    }
    // Anything above 2^100 is effectively unbounded for 40-bit coordinates.
    __int128 B = __int128(1) << 100;
    if (budget_z <= (Integer(1) << 100)) {
        B = 0;
        for (char ch : budget_z.get_str()) B = B * 10 + (ch - '0');
    }
    const auto& X = sp.xs;
    std::vector<std::vector<__int128>> D01(n, std::vector<__int128>(n)), D02 = D01, D12 = D01;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            D01[a][b] = d2(X[0][a], X[1][b]);
            D02[a][b] = d2(X[0][a], X[2][b]);
            D12[a][b] = d2(X[1][a], X[2][b]);
        }
    std::vector<__int128> lb(n, -1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                __int128 S = D01[a][b] + D02[a][c] + D12[b][c];
                if (lb[a] < 0 || S < lb[a]) lb[a] = S;
            }
    __int128 lbsum = 0;
    for (auto v : lb) lbsum += v;
    Decision dec;
    if (lbsum > B) {
        dec.note = "lower bound exceeds budget";
        return dec;
    }
    struct Cand {
        int s[3];
        __int128 S;
    };
    std::vector<Cand> cands;
    for (std::size_t a = 0; a < n; ++a) {
        const __int128 cap_a = B - (lbsum - lb[a]);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                __int128 S = D01[a][b] + D02[a][c] + D12[b][c];
                if (S <= cap_a) cands.push_back({{int(a), int(b), int(c)}, S});
            }
        if (cands.size() > 5'000'000) throw GuardExceeded("too many candidate triples for uc3p search");
    }
    // Twins: slots of one measure with identical coordinates are interchangeable.
    std::vector<std::vector<int>> twin_rep(3, std::vector<int>(n));
    for (int col = 0; col < 3; ++col)
        for (std::size_t a = 0; a < n; ++a) {
            twin_rep[col][a] = static_cast<int>(a);
            for (std::size_t b = 0; b < a; ++b)
                if (X[col][b] == X[col][a]) {
                    twin_rep[col][a] = twin_rep[col][b];
                    break;
                }
        }
    // For each slot, the twins in index order.
    std::vector<std::vector<std::vector<int>>> twins(3, std::vector<std::vector<int>>(n));
    for (int col = 0; col < 3; ++col)
        for (std::size_t a = 0; a < n; ++a) twins[col][twin_rep[col][a]].push_back(static_cast<int>(a));
    std::vector<std::vector<std::vector<int>>> by_slot(3, std::vector<std::vector<int>>(n));
    for (std::size_t t = 0; t < cands.size(); ++t)
        for (int col = 0; col < 3; ++col) by_slot[col][cands[t].s[col]].push_back(static_cast<int>(t));

    std::vector<std::vector<char>> used(3, std::vector<char>(n, 0));
    auto active = [&](int col, int a) {
        if (used[col][a]) return false;
        for (int b : twins[col][twin_rep[col][a]]) {
            if (b == a) return true;
            if (!used[col][b]) return false;
        }
        return true;
    };
    std::vector<int> chosen;
    __int128 rest_lb = lbsum;
    __int128 sum = 0;
    std::uint64_t nodes = 0;
    std::size_t matched = 0;

    std::function<bool()> rec = [&]() -> bool {
        if (++nodes > node_guard)
            throw GuardExceeded("uc3p search exceeded " + std::to_string(node_guard) + " nodes");
        if (matched == n) return true;
        auto viable = [&](const Cand& c) {
            for (int col = 0; col < 3; ++col)
                if (!active(col, c.s[col])) return false;
            return sum + c.S + (rest_lb - lb[c.s[0]]) <= B;
        };
        int best_col = -1, best_slot = -1;
        std::size_t best_cnt = 0;
        for (int col = 0; col < 3; ++col)
            for (std::size_t a = 0; a < n; ++a) {
                if (!active(col, static_cast<int>(a))) continue;
                std::size_t cnt = 0;
                for (int t : by_slot[col][a])
                    if (viable(cands[t])) ++cnt;
                if (cnt == 0) return false;
                if (best_col < 0 || cnt < best_cnt) {
                    best_col = col;
                    best_slot = static_cast<int>(a);
                    best_cnt = cnt;
                }
            }
        std::vector<int> opts;
        for (int t : by_slot[best_col][best_slot])
            if (viable(cands[t])) opts.push_back(t);
        std::sort(opts.begin(), opts.end(), [&](int x, int y) {
            if (cands[x].S != cands[y].S) return cands[x].S < cands[y].S;
            return x < y;
        });
        for (int t : opts) {
            const Cand& c = cands[t];
            for (int col = 0; col < 3; ++col) used[col][c.s[col]] = 1;
            sum += c.S;
            rest_lb -= lb[c.s[0]];
            ++matched;
            chosen.push_back(t);
            if (rec()) return true;
            chosen.pop_back();
            --matched;
            rest_lb += lb[c.s[0]];
            sum -= c.S;
            for (int col = 0; col < 3; ++col) used[col][c.s[col]] = 0;
        }
        return false;
    };
    bool found = rec();
    dec.nodes = nodes;
    if (found) {
        CombinationMeasure P;
        for (int t : chosen)
            P.entries.push_back({{cands[t].s[0], cands[t].s[1], cands[t].s[2]}, Rational(1, static_cast<long>(n))});
        std::sort(P.entries.begin(), P.entries.end(),
                  [](const CombinationEntry& a, const CombinationEntry& b) { return a.tuple < b.tuple; });
        dec.yes = true;
        dec.witness = std::move(P);
        dec.note = "perfect matching within budget";
    } else {
        dec.note = "no perfect matching within budget";
    }
    return dec;
}

}  // namespace wb
