#include "wb/verify.hpp"

#include <algorithm>
#include <tuple>
#include <map>

#include "wb/cost.hpp"

namespace wb {

nlohmann::json VerificationReport::to_json() const {
    return {{"valid", valid},
            {"sparsity_ok", sparsity_ok},
            {"cost", wb::to_string(cost)},
            {"cost_ok", cost_ok},
            {"non_mass_splitting", non_mass_splitting},
            {"support_size", support_size},
            {"accepted", accepted()},
            {"details", details}};
}

VerificationReport verify_scmp_certificate(const CombinationMeasure& P, const ProblemInstance& inst, std::size_t N,
                                           const Rational& phi) {
    VerificationReport rep;
    rep.support_size = P.entries.size();
    rep.sparsity_ok = P.entries.size() <= N;
    Report r = validate_combination(P, inst);
    rep.valid = r.ok();
    if (!rep.valid) {
        rep.details = r.str();
        rep.cost = 0;
        return rep;
    }
    Rational c = 0;
    for (const auto& e : P.entries) c += tuple_cost_pairwise(e.tuple, inst) * e.mass;
    rep.cost = c;
    rep.cost_ok = c <= phi;
    std::string d;
    if (!rep.sparsity_ok) d += "support " + std::to_string(P.entries.size()) + " > N=" + std::to_string(N) + "; ";
    if (!rep.cost_ok) d += "cost " + wb::to_string(c) + " > phi=" + wb::to_string(phi) + "; ";
    rep.details = d.empty() ? "accepted" : d.substr(0, d.size() - 2);
    return rep;
}

PlanResult optimal_plan_for_support(const DiscreteMeasure& P, const ProblemInstance& inst) {
    for (const auto& s : P.points)
        if (s.coords.size() != inst.d) throw std::invalid_argument("candidate dimension differs from instance");
    Report r = validate_measure(P, inst.d, "candidate");
    if (!r.ok()) throw std::invalid_argument(r.str());
    const std::size_t J = P.size(), m = inst.m();
    std::vector<int> off(m);
    int tot = 0;
    for (std::size_t i = 0; i < m; ++i) {
        off[i] = tot;
        tot += static_cast<int>(inst.measures[i].size());
    }
    // rows: (j,i) -> j*m+i, then (i,k) -> J*m + off[i] + k
    LinearProgram lp;
    lp.rows = J * m + static_cast<std::size_t>(tot);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t i = 0; i < m; ++i) lp.rhs.push_back(P.points[j].mass);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& s : inst.measures[i].points) lp.rhs.push_back(s.mass);
    std::vector<Flow> vars;
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < inst.measures[i].size(); ++k) {
                SparseColumn c;
                c.entries = {{static_cast<int>(j * m + i), Rational(1)},
                             {static_cast<int>(J * m + off[i] + k), Rational(1)}};
                lp.cols.push_back(std::move(c));
                lp.cost.push_back(inst.weights[i] *
                                  squared_distance(P.points[j].coords, inst.measures[i].points[k].coords));
                vars.push_back({static_cast<int>(j), static_cast<int>(i), static_cast<int>(k), 0});
            }
    auto sol = solve_lp(lp, {PricingRule::DantzigBland, 30});
    if (sol.status != LpStatus::Optimal) throw std::logic_error("fixed-support LP reported " + to_string(sol.status));
    PlanResult res;
    res.value = sol.objective;
    for (std::size_t v = 0; v < vars.size(); ++v)
        if (sol.values[v] > 0) {
            Flow f = vars[v];
            f.mass = sol.values[v];
            res.plan.flows.push_back(f);
        }
    return res;
}

SplitCheck is_non_mass_splitting(const TransportPlan& plan) {
    std::map<std::pair<int, int>, int> first;
    SplitCheck sc;
    for (const auto& f : plan.flows) {
        auto key = std::make_pair(f.j, f.i);
        auto it = first.find(key);
        if (it == first.end()) {
            first.emplace(key, f.k);
        } else if (it->second != f.k && it->second != -1) {
            sc.ok = false;
            sc.violations.push_back(key);
            it->second = -1;  // report each (j,i) once
        }
    }
    return sc;
}

DiscreteMeasure from_combination(const CombinationMeasure& P, const ProblemInstance& inst) {
    Report r = validate_combination(P, inst);
    if (!r.ok()) throw std::invalid_argument("invalid combination measure: " + r.str());
    DiscreteMeasure out;
    std::map<Point, std::size_t> where;
    for (const auto& e : P.entries) {
        Point x = weighted_mean(e.tuple, inst);
        auto it = where.find(x);
        if (it == where.end()) {
            where.emplace(x, out.points.size());
            out.points.push_back({x, e.mass});
        } else {
            out.points[it->second].mass += e.mass;
        }
    }
    return out;
}

TransportPlan induced_plan(const CombinationMeasure& P, const ProblemInstance& inst) {
    DiscreteMeasure Q = from_combination(P, inst);
    std::map<Point, int> where;
    for (std::size_t j = 0; j < Q.size(); ++j) where.emplace(Q.points[j].coords, static_cast<int>(j));
    std::map<std::tuple<int, int, int>, Rational> acc;
    for (const auto& e : P.entries) {
        int j = where.at(weighted_mean(e.tuple, inst));
        for (std::size_t i = 0; i < inst.m(); ++i) acc[{j, static_cast<int>(i), e.tuple[i]}] += e.mass;
    }
    TransportPlan plan;
    for (const auto& [key, mass] : acc)
        plan.flows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mass});
    return plan;
}

ToCombinationResult to_combination(const DiscreteMeasure& P, const ProblemInstance& inst) {
    ToCombinationResult res;
    auto pr = optimal_plan_for_support(P, inst);
    res.plan = pr.plan;
    res.value = pr.value;
    auto sc = is_non_mass_splitting(pr.plan);
    if (!sc.ok) {
        res.reason = "optimal plan splits mass at (j=" + std::to_string(sc.violations[0].first) +
                     ", i=" + std::to_string(sc.violations[0].second) + ")";
        return res;
    }
    std::vector<Tuple> tuple(P.size(), Tuple(inst.m(), -1));
    for (const auto& f : pr.plan.flows) tuple[f.j][f.i] = f.k;
    for (std::size_t j = 0; j < P.size(); ++j) {
        if (weighted_mean(tuple[j], inst) != P.points[j].coords) {
            res.reason = "support point " + std::to_string(j) + " is not the weighted mean of its tuple";
            return res;
        }
        res.measure.entries.push_back({tuple[j], P.points[j].mass});
    }
    std::sort(res.measure.entries.begin(), res.measure.entries.end(),
              [](const CombinationEntry& a, const CombinationEntry& b) { return a.tuple < b.tuple; });
    Report r = validate_combination(res.measure, inst);
    if (!r.ok()) {
        res.reason = "recovered tuples do not form a combination measure: " + r.str();
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace wb
