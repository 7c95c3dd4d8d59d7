#pragma once
#include <string>
#include <utility>
#include <vector>

#include "wb/lp.hpp"
#include "wb/measures.hpp"

namespace wb {

struct VerificationReport {
    bool valid = false;          // combination-measure invariants incl. marginals
    bool sparsity_ok = false;
    bool cost_ok = false;
    bool non_mass_splitting = true;  // a combination measure never splits mass
    Rational cost;
    std::size_t support_size = 0;
    std::string details;

    bool accepted() const { return valid && sparsity_ok && cost_ok; }
    nlohmann::json to_json() const;
};

// The cost is always recomputed from the instance; nothing in P is trusted.
VerificationReport verify_scmp_certificate(const CombinationMeasure& P, const ProblemInstance& inst, std::size_t N,
                                           const Rational& phi);

struct PlanResult {
    TransportPlan plan;
    Rational value;
};

// Fixed-support LP with |P| * sum_i |P_i| flow variables.
PlanResult optimal_plan_for_support(const DiscreteMeasure& P, const ProblemInstance& inst);

struct SplitCheck {
    bool ok = true;
    std::vector<std::pair<int, int>> violations;  // (j, i) pairs that split
};

SplitCheck is_non_mass_splitting(const TransportPlan& plan);

struct ToCombinationResult {
    bool ok = false;
    CombinationMeasure measure;
    TransportPlan plan;
    Rational value;
    std::string reason;
};

ToCombinationResult to_combination(const DiscreteMeasure& P, const ProblemInstance& inst);

// Weighted means of the entries, coincident means merged, in first-seen order.
DiscreteMeasure from_combination(const CombinationMeasure& P, const ProblemInstance& inst);

// The plan a combination measure encodes, relative to from_combination(P).
TransportPlan induced_plan(const CombinationMeasure& P, const ProblemInstance& inst);

}  // namespace wb
