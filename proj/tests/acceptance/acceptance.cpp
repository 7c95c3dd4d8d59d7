// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wb/barycenter.hpp"
#include "wb/cost.hpp"
#include "wb/pattern.hpp"
#include "wb/reduction.hpp"
#include "wb/verify.hpp"

using namespace wb;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------ P3DM family

using Bits = std::array<int, 3>;

P3dmInstance from_bits(std::size_t q, const std::vector<Bits>& ts) {
    P3dmInstance p;
    for (std::size_t i = 1; i <= q; ++i) {
        p.X.push_back("x" + std::to_string(i));
        p.Y.push_back("y" + std::to_string(i));
        p.Z.push_back("z" + std::to_string(i));
    }
    for (const auto& t : ts)
        p.triples.push_back({p.X[static_cast<std::size_t>(t[0])], p.Y[static_cast<std::size_t>(t[1])],
                             p.Z[static_cast<std::size_t>(t[2])]});
    return p;
}

std::string bits_label(const std::vector<Bits>& ts) {
    std::string s;
    for (const auto& t : ts) s += (s.empty() ? "" : " ") + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
    return s;
}

struct FamilyMember {
    std::string label;
    P3dmInstance p;
};

// Every triple set over q = 1 and q = 2 up to relabeling inside X, Y, Z and
// permuting the three roles. Sets leaving an element uncovered are trivially NO
// and are not compiled; sets with an element in four triples violate the degree
// bound of P3DM.
std::vector<FamilyMember> tiny_family(std::size_t* skipped_unused, std::size_t* skipped_degree) {
    std::vector<FamilyMember> out;
    out.push_back({"q1: 000", from_bits(1, {{0, 0, 0}})});
    std::vector<Bits> all;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) all.push_back({a, b, c});
    std::set<std::vector<Bits>> seen;
    for (int mask = 1; mask < 256; ++mask) {
        std::vector<Bits> ts;
        for (int k = 0; k < 8; ++k)
            if (mask >> k & 1) ts.push_back(all[static_cast<std::size_t>(k)]);
        std::vector<Bits> best;
        std::array<int, 3> perm{0, 1, 2};
        do {
            for (int fl = 0; fl < 8; ++fl) {
                std::vector<Bits> img;
                for (const auto& t : ts) img.push_back({t[static_cast<std::size_t>(perm[0])] ^ (fl & 1),
                                                        t[static_cast<std::size_t>(perm[1])] ^ (fl >> 1 & 1),
                                                        t[static_cast<std::size_t>(perm[2])] ^ (fl >> 2 & 1)});
                std::sort(img.begin(), img.end());
                if (best.empty() || img < best) best = img;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!seen.insert(best).second) continue;
        bool unused = false, heavy = false;
        for (int i = 0; i < 3; ++i)
            for (int v = 0; v < 2; ++v) {
                auto d = std::count_if(best.begin(), best.end(), [&](const Bits& t) { return t[static_cast<std::size_t>(i)] == v; });
                unused = unused || d == 0;
                heavy = heavy || d > 3;
            }
        if (unused) {
            ++*skipped_unused;
            continue;
        }
        if (heavy) {
            ++*skipped_degree;
            continue;
        }
        out.push_back({"q2: " + bits_label(best), from_bits(2, best)});
    }
    return out;
}

struct Compiled {
    FamilyMember m;
    GadgetGraph g;
    ProblemInstance inst;
    bool yes = false;
    std::vector<std::vector<std::size_t>> covers;  // every exact cover
    double compile_s = 0;
};

std::vector<std::vector<std::size_t>> all_covers(const P3dmInstance& p) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t T = p.triples.size();
    for (unsigned mask = 0; mask < (1u << T); ++mask) {
        std::vector<std::size_t> c;
        for (std::size_t t = 0; t < T; ++t)
            if (mask >> t & 1) c.push_back(t);
        if (c.size() == p.q() && is_exact_cover(p, c)) out.push_back(c);
    }
    return out;
}

std::vector<Compiled>& family() {
    static std::vector<Compiled> fam;
    return fam;
}

std::array<GPoint, 3> tuple_coords(const Tuple& t, const ProblemInstance& inst) {
    std::array<GPoint, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& c = inst.measures[i].points[static_cast<std::size_t>(t[i])].coords;
        out[i] = {c[0].get_num().get_si(), c[1].get_num().get_si()};
    }
    return out;
}

std::set<std::array<GPoint, 3>> triangle_coords(const GadgetGraph& g) {
    std::set<std::array<GPoint, 3>> out;
    for (const auto& tr : g.triangles) {
        std::array<GPoint, 3> pts;
        for (std::size_t i = 0; i < 3; ++i) pts[i] = g.vertices[static_cast<std::size_t>(tr.v[i])].p;
        out.insert(pts);
    }
    return out;
}

ProblemInstance random_instance(std::mt19937_64& rng, std::size_t m, std::size_t d, int max_size, int bound) {
    std::vector<int> sizes;
    for (std::size_t i = 0; i < m; ++i) sizes.push_back(std::uniform_int_distribution<int>(1, max_size)(rng));
    return gen_random(sizes, d, bound, rng());
}

// ------------------------------------------------------------ criteria

Outcome c1_cost_identity() {
    Outcome o;
    std::mt19937_64 rng(1);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        std::size_t m = 2 + it % 4, d = 1 + (it / 4) % 3;
        auto inst = random_instance(rng, m, d, 3, 50);
        // Non-dyadic rational coordinates and weights.
        for (auto& mu : inst.measures)
            for (auto& s : mu.points)
                for (auto& c : s.coords) c /= static_cast<long>(1 + rng() % 7);
        Tuple t;
        for (const auto& mu : inst.measures) t.push_back(static_cast<int>(rng() % mu.size()));
        if (tuple_cost_mean(t, inst) != tuple_cost_pairwise(t, inst)) o.fail("mismatch at iteration " + std::to_string(it));
        ++checked;
    }
    o.detail = o.pass ? std::to_string(checked) + " tuples, m in 2..5, d in 1..3, exact equality" : o.detail;
    return o;
}

Outcome c2_scan() {
    Outcome o;
    std::size_t checked = 0;
    double worst = 0;
    for (const auto& c : family()) {
        auto t0 = std::chrono::steady_clock::now();
        auto scan = min_triple_scan(c.inst);
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        if (scan.min_cost != Rational(50, 9)) o.fail(c.m.label + ": minimum " + to_string(scan.min_cost));
        std::set<std::array<GPoint, 3>> got;
        for (const auto& t : scan.argmin) got.insert(tuple_coords(t, c.inst));
        if (got != triangle_coords(c.g)) o.fail(c.m.label + ": argmin differs from the gadget triangles");
        if (dt > 30) o.fail(c.m.label + ": scan took " + std::to_string(dt) + " s");
        ++checked;
    }
    if (checked < 3) o.fail("fewer than 3 gadgets");
    if (o.pass) {
        std::ostringstream s;
        s << checked << " gadgets, min 50/9 and argmin == triangle set by coordinates, slowest scan " << worst << " s";
        o.detail = s.str();
    }
    return o;
}

Outcome c3_yes_value() {
    Outcome o;
    std::size_t yes = 0, lp_runs = 0;
    for (const auto& c : family()) {
        if (!c.yes) continue;
        ++yes;
        for (const auto& cover : c.covers) {
            auto P = construct_yes_barycenter(c.g, cover);
            if (P.entries.size() != c.g.n) o.fail(c.m.label + ": entry count " + std::to_string(P.entries.size()));
            if (transport_cost(P, c.inst) != Rational(50, 9)) o.fail(c.m.label + ": cost " + to_string(transport_cost(P, c.inst)));
        }
        // Every tuple costs at least the scan minimum, so no measure beats 50/9.
        if (min_triple_scan(c.inst).min_cost != Rational(50, 9)) o.fail(c.m.label + ": lower bound is not 50/9");
        // Full LP where the tuple space stays small.
        if (c.g.n <= 40) {
            auto r = solve_exact(c.inst);
            ++lp_runs;
            if (r.value != Rational(50, 9)) o.fail(c.m.label + ": solve_exact " + to_string(r.value));
        }
    }
    if (lp_runs == 0) o.fail("solve_exact never ran");
    if (o.pass)
        o.detail = std::to_string(yes) + " YES gadgets at 50/9 with n entries; solve_exact = 50/9 on " +
                   std::to_string(lp_runs) + " with n <= 40, scan lower bound on all";
    return o;
}

Outcome c4_agreement(double compile_total, std::size_t skipped_unused, std::size_t skipped_degree) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::size_t yes = 0, no = 0;
    for (const auto& c : family()) {
        auto u = uc3p_bruteforce(c.inst, Rational(50, 9));
        if (u.yes != c.yes) o.fail(c.m.label + ": uc3p says " + (u.yes ? "yes" : "no"));
        (c.yes ? yes : no)++;
    }
    double total = compile_total + seconds_since(t0);
    if (total > 60) o.fail("took " + std::to_string(total) + " s");
    if (yes == 0 || no == 0) o.fail("family lacks YES or NO cases");
    if (o.pass) {
        std::ostringstream s;
        s << family().size() << " instances (" << yes << " yes, " << no << " no; " << skipped_unused
          << " with an unused element and " << skipped_degree << " with an element in 4 triples left out), "
          << total << " s including compilation";
        o.detail = s.str();
    }
    return o;
}

Outcome c5_roundtrip() {
    Outcome o;
    std::size_t certs = 0;
    for (const auto& c : family()) {
        if (!c.yes) continue;
        std::vector<std::pair<CombinationMeasure, std::vector<std::size_t>>> todo;
        for (const auto& cover : c.covers) todo.push_back({construct_yes_barycenter(c.g, cover), cover});
        auto u = uc3p_bruteforce(c.inst, Rational(50, 9));
        if (u.witness) todo.push_back({*u.witness, {}});
        for (const auto& [P, cover] : todo) {
            auto rep = verify_scmp_certificate(P, c.inst, c.g.n, Rational(50, 9));
            if (!rep.accepted()) {
                o.fail(c.m.label + ": certificate rejected: " + rep.details);
                continue;
            }
            ++certs;
            PatternResult pr;
            try {
                pr = detect_alternating(c.g, P);
            } catch (const PatternError& e) {
                o.fail(c.m.label + ": " + e.what());
                continue;
            }
            if (!pr.ok) {
                o.fail(c.m.label + ": " + pr.violation);
                continue;
            }
            try {
                auto dec = decode_matching(pr.pattern, c.m.p);
                std::sort(dec.begin(), dec.end());
                if (!is_exact_cover(c.m.p, dec)) o.fail(c.m.label + ": decoded set is not a cover");
                if (!cover.empty() && dec != cover) o.fail(c.m.label + ": decoded cover differs from the constructed one");
            } catch (const PatternError& e) {
                o.fail(c.m.label + ": " + e.what());
            }
        }
    }
    if (o.pass) o.detail = std::to_string(certs) + " accepted certificates detected and decoded to exact covers";
    return o;
}

Outcome c6_square() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto inst = gen_square_example(Rational(6));
    auto res = solve_exact(inst);
    if (res.value != 9) o.fail("value " + to_string(res.value));
    if (res.support_size > 3 || sparsity_bound(inst) != 3) o.fail("support " + std::to_string(res.support_size));
    // Corner (0,0) sends b to (6,0) and 1/2 - b to (0,6); (6,6) mirrors it.
    for (Rational b : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
        CombinationMeasure P;
        Rational rest = Rational(1, 2) - b;
        if (b > 0) P.entries.push_back({{0, 0}, b}), P.entries.push_back({{1, 1}, b});
        if (rest > 0) P.entries.push_back({{0, 1}, rest}), P.entries.push_back({{1, 0}, rest});
        auto bar = from_combination(P, inst);
        auto plan = induced_plan(P, inst);
        if (plan_cost(bar, plan, inst) != 9) o.fail("b = " + to_string(b) + ": plan cost " + to_string(plan_cost(bar, plan, inst)));
    }
    double dt = seconds_since(t0);
    if (dt > 1) o.fail("took " + std::to_string(dt) + " s");
    if (o.pass) o.detail = "value 9, b in {0, 1/4, 1/2} all cost 9, vertex support " + std::to_string(res.support_size) + " <= 3";
    return o;
}

std::vector<std::pair<ProblemInstance, BarycenterResult>>& solved() {
    static std::vector<std::pair<ProblemInstance, BarycenterResult>> s;
    return s;
}

Outcome c7_sparsity() {
    Outcome o;
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        auto inst = random_instance(rng, 2 + static_cast<std::size_t>(it % 3), 1 + static_cast<std::size_t>(it % 3), 4, 12);
        auto r = solve_exact(inst);
        std::size_t mx = 0;
        for (const auto& mu : inst.measures) mx = std::max(mx, mu.size());
        if (r.support_size > sparsity_bound(inst)) o.fail("instance " + std::to_string(it) + " above the bound");
        if (r.support_size < mx) o.fail("instance " + std::to_string(it) + " below max |P_i|");
        solved().push_back({inst, r});
    }
    if (o.pass) o.detail = "50 instances within [max |P_i|, sum |P_i| - m + 1]";
    return o;
}

Outcome c8_special() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(8);
    for (int it = 0; it < 50; ++it) {
        auto one_d = random_instance(rng, 2 + static_cast<std::size_t>(it % 3), 1, 4, 20);
        auto a = solve_1d(one_d), b = solve_exact(one_d);
        if (a.value != b.value) o.fail("1d instance " + std::to_string(it));
        if (transport_cost(a.measure, one_d) != a.value) o.fail("1d measure cost, instance " + std::to_string(it));
        solved().push_back({one_d, a});
        auto two = random_instance(rng, 2, 1 + static_cast<std::size_t>(it % 3), 5, 20);
        auto c = solve_2measures(two), d = solve_exact(two);
        if (c.value != d.value) o.fail("m=2 instance " + std::to_string(it));
        if (transport_cost(c.measure, two) != c.value) o.fail("m=2 measure cost, instance " + std::to_string(it));
        solved().push_back({two, c});
    }
    double dt = seconds_since(t0);
    if (dt > 10) o.fail("took " + std::to_string(dt) + " s");
    if (o.pass) o.detail = "50 d=1 and 50 m=2 instances match solve_exact exactly";
    return o;
}

// True when two distinct tuples of S* have the same weighted mean.
bool shares_mean(const ProblemInstance& inst) {
    std::set<Point> seen;
    for (const auto& t : enumerate_tuples(inst, 1u << 20))
        if (!seen.insert(weighted_mean(t, inst)).second) return true;
    return false;
}

Outcome c9_pipeline() {
    Outcome o;
    std::size_t n = 0, corrupt = 0, degenerate = 0;
    // Wide coordinate ranges make shared means unlikely, so the strict branch sees plenty.
    std::mt19937_64 rng(9);
    for (int it = 0; it < 30; ++it) {
        auto inst = random_instance(rng, 2 + static_cast<std::size_t>(it % 3), 1 + static_cast<std::size_t>(it % 2), 4, 1000000);
        solved().push_back({inst, solve_exact(inst)});
    }
    for (const auto& [inst, res] : solved()) {
        auto support = from_combination(res.measure, inst);
        auto pr = optimal_plan_for_support(support, inst);
        if (pr.value != res.value) o.fail("plan value differs from the barycenter cost");
        auto split = is_non_mass_splitting(pr.plan);
        if (!shares_mean(inst)) {
            if (!split.ok) o.fail("optimal plan splits mass");
            auto back = to_combination(support, inst);
            if (!back.ok) o.fail("to_combination failed: " + back.reason);
            else if (transport_cost(back.measure, inst) != res.value) o.fail("round trip changed the cost");
        } else {
            // Tuples with a common mean make the optimal face degenerate and the LP may stop
            // at a splitting vertex. The plan read off P* is still optimal, and it splits only
            // where several entries of P* landed on one point and were merged.
            ++degenerate;
            auto own = induced_plan(res.measure, inst);
            if (plan_cost(support, own, inst) != pr.value) o.fail("plan read off P* is not optimal");
            std::map<Point, int> entries_at;
            for (const auto& e : res.measure.entries) ++entries_at[weighted_mean(e.tuple, inst)];
            for (const auto& [j, i] : is_non_mass_splitting(own).violations) {
                (void)i;
                if (entries_at[support.points[static_cast<std::size_t>(j)].coords] < 2)
                    o.fail("plan read off P* splits at an unmerged point");
            }
        }
        const auto N = res.support_size;
        if (!verify_scmp_certificate(res.measure, inst, N, res.value).accepted()) o.fail("solver output rejected");

        auto wrong_mass = res.measure;
        wrong_mass.entries[0].mass += Rational(1, 1000);
        auto wrong_tuple = res.measure;
        wrong_tuple.entries[0].tuple.back() = static_cast<int>(inst.measures.back().size());
        auto inflated = res.measure;
        auto extra = inflated.entries[0];
        inflated.entries[0].mass /= 2;
        extra.mass /= 2;
        inflated.entries.push_back(extra);
        for (const auto* bad : {&wrong_mass, &wrong_tuple, &inflated}) {
            ++corrupt;
            if (verify_scmp_certificate(*bad, inst, N, res.value).accepted()) o.fail("a corrupted certificate was accepted");
        }
        // Too small an N must also be rejected.
        ++corrupt;
        if (N > 0 && verify_scmp_certificate(res.measure, inst, N - 1, res.value).accepted()) o.fail("sparsity bound ignored");
        ++n;
    }
    if (o.pass)
        o.detail = std::to_string(n) + " barycenters checked (" + std::to_string(degenerate) +
                   " with two tuples sharing a mean, checked through the induced plan), " + std::to_string(corrupt) + " corrupted certificates rejected";
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const std::string& name, const std::function<Outcome()>& fn) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::ostringstream s;
        s.precision(3);
        s << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << o.detail << " ["
          << std::fixed << seconds_since(t0) << " s]";
        std::cout << s.str() << std::endl;
        if (!o.pass) ++failures;
    };

    // Shared P3DM family used by criteria 2 to 5.
    std::size_t skipped_unused = 0, skipped_degree = 0;
    double compile_total = 0;
    std::string compile_error;
    for (auto& m : tiny_family(&skipped_unused, &skipped_degree)) {
        Compiled c;
        c.m = m;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.g = compile_p3dm(m.p);
            c.inst = emit_uc3p(c.g);
        } catch (const std::exception& e) {
            compile_error = m.label + ": " + e.what();
            break;
        }
        auto dec = p3dm_decide_bruteforce(m.p);
        c.yes = dec.yes;
        c.covers = all_covers(m.p);
        c.compile_s = seconds_since(t0);
        compile_total += c.compile_s;
        family().push_back(std::move(c));
    }
    if (!compile_error.empty()) {
        std::cout << "FAIL family compilation: " << compile_error << std::endl;
        return 1;
    }

    report(1, "cost identity", c1_cost_identity);
    report(2, "triangle scan", c2_scan);
    report(3, "YES value 50/9", c3_yes_value);
    report(4, "decision agreement", [&] { return c4_agreement(compile_total, skipped_unused, skipped_degree); });
    report(5, "certificate round trip", c5_roundtrip);
    report(6, "square example", c6_square);
    report(7, "sparsity bounds", c7_sparsity);
    report(8, "special-case solvers", c8_special);
    report(9, "verification pipeline", c9_pipeline);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
