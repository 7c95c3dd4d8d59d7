#include "wb/cost.hpp"

#include <stdexcept>

namespace wb {

Rational squared_distance(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Rational s = 0;
    for (std::size_t c = 0; c < a.size(); ++c) s += sq(a[c] - b[c]);
    return s;
}

namespace {
const Point& slot_point(const Tuple& t, const ProblemInstance& inst, std::size_t i) {
    if (t.size() != inst.m()) throw std::out_of_range("tuple length != m");
    if (t[i] < 0 || t[i] >= static_cast<int>(inst.measures[i].size()))
        throw std::out_of_range("tuple index out of range for measure " + std::to_string(i));
    return inst.measures[i].points[t[i]].coords;
}
}  // namespace

Rational tuple_cost_mean(const Tuple& t, const ProblemInstance& inst) {
    Point x = weighted_mean(t, inst);
    Rational c = 0;
    for (std::size_t i = 0; i < inst.m(); ++i)
        c += inst.weights[i] * squared_distance(x, slot_point(t, inst, i));
    return c;
}

Rational tuple_cost_pairwise(const Tuple& t, const ProblemInstance& inst) {
    Rational c = 0;
    const std::size_t m = inst.m();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& xi = slot_point(t, inst, i);
        for (std::size_t k = i + 1; k < m; ++k)
            c += inst.weights[i] * inst.weights[k] * squared_distance(xi, slot_point(t, inst, k));
    }
    return c;
}

Rational triple_cost(const Tuple& t, const ProblemInstance& inst) {
    const Rational third(1, 3);
    if (inst.m() != 3 || inst.weights[0] != third || inst.weights[1] != third || inst.weights[2] != third)
        throw std::invalid_argument("triple_cost needs m = 3 and weights (1/3,1/3,1/3)");
    const Point& a = slot_point(t, inst, 0);
    const Point& b = slot_point(t, inst, 1);
    const Point& c = slot_point(t, inst, 2);
    return (squared_distance(a, b) + squared_distance(a, c) + squared_distance(b, c)) / 9;
}

Rational transport_cost(const CombinationMeasure& P, const ProblemInstance& inst) {
    Report r = validate_combination(P, inst);
    if (!r.ok()) throw std::invalid_argument("invalid combination measure: " + r.str());
    Rational phi = 0;
    for (const auto& e : P.entries) phi += tuple_cost_pairwise(e.tuple, inst) * e.mass;
    return phi;
}

Rational plan_cost(const DiscreteMeasure& P, const TransportPlan& plan, const ProblemInstance& inst) {
    Report r = validate_plan(plan, P, inst);
    if (!r.ok()) throw std::invalid_argument("invalid transport plan: " + r.str());
    Rational c = 0;
    for (const auto& f : plan.flows)
        c += inst.weights[f.i] * squared_distance(P.points[f.j].coords, inst.measures[f.i].points[f.k].coords) *
             f.mass;
    return c;
}

}  // namespace wb
