#pragma once
#include "wb/measures.hpp"

namespace wb {

struct TupleCost {
    Tuple tuple;
    Rational cost;
};

Rational squared_distance(const Point& a, const Point& b);

// Mean form: sum_i lambda_i |mean - x_i|^2. Kept as a cross-check.
Rational tuple_cost_mean(const Tuple& t, const ProblemInstance& inst);
// Pairwise form: sum_{i<k} lambda_i lambda_k |x_k - x_i|^2. The default kernel.
Rational tuple_cost_pairwise(const Tuple& t, const ProblemInstance& inst);
// m = 3 with uniform weights: one ninth of the summed squared side lengths.
Rational triple_cost(const Tuple& t, const ProblemInstance& inst);

// phi(P*) = sum_j c(s_j) w_j. Throws std::invalid_argument on bad marginals.
Rational transport_cost(const CombinationMeasure& P, const ProblemInstance& inst);
// Cost of an explicit, possibly mass-splitting plan from P to the inputs.
Rational plan_cost(const DiscreteMeasure& P, const TransportPlan& plan, const ProblemInstance& inst);

}  // namespace wb
