#pragma once
#include <optional>
#include <string>
#include <vector>

#include "wb/measures.hpp"
#include "wb/reduction.hpp"

namespace wb {

struct AlternatingPattern {
    std::vector<std::vector<bool>> selection;  // per path, per triangle along it
    std::vector<std::size_t> selected_triples; // triples whose triangle carries mass
    std::vector<std::size_t> cover;            // filled by decode_matching
};

struct PatternResult {
    bool ok = false;
    AlternatingPattern pattern;
    std::string violation;  // first violation found when !ok
};

struct PatternError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Identifies every entry of P with a gadget triangle by vertex coordinates.
// Throws PatternError when an entry is not a gadget triangle or its mass is not 1/n.
PatternResult detect_alternating(const GadgetGraph& g, const CombinationMeasure& P);

// Throws PatternError if the selected triples do not form an exact cover.
std::vector<std::size_t> decode_matching(const AlternatingPattern& pat, const P3dmInstance& p);

struct TripleScan {
    Rational min_cost;
    std::vector<Tuple> argmin;  // lexicographic
};
TripleScan min_triple_scan(const ProblemInstance& inst, std::uint64_t cap = 50'000'000);

struct Circumference {
    std::optional<Rational> exact;  // set when every side length is rational
    double approx = 0;
};
Circumference circumference_cost(const Point& a, const Point& b, const Point& c);

nlohmann::json pattern_to_json(const AlternatingPattern& pat, const GadgetGraph& g);

}  // namespace wb
