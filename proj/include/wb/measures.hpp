#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wb/rational.hpp"

namespace wb {

using Point = std::vector<Rational>;

struct Slot {
    Point coords;
    Rational mass;
    bool operator==(const Slot&) const = default;
};

// A finitely supported probability measure. Entries with equal coordinates
// are distinct slots and keep their own mass.
struct DiscreteMeasure {
    std::vector<Slot> points;
    std::size_t size() const { return points.size(); }
    bool operator==(const DiscreteMeasure&) const = default;
};

struct ProblemInstance {
    std::size_t d = 0;
    std::vector<DiscreteMeasure> measures;
    std::vector<Rational> weights;
    std::size_t m() const { return measures.size(); }
    bool operator==(const ProblemInstance&) const = default;
};

// Entry i selects a slot of measure i.
using Tuple = std::vector<int>;

struct CombinationEntry {
    Tuple tuple;
    Rational mass;
    bool operator==(const CombinationEntry&) const = default;
};

struct CombinationMeasure {
    std::vector<CombinationEntry> entries;
    bool operator==(const CombinationMeasure&) const = default;
};

struct Flow {
    int j = 0;  // candidate slot
    int i = 0;  // input measure
    int k = 0;  // slot of measure i
    Rational mass;
    bool operator==(const Flow&) const = default;
};

struct TransportPlan {
    std::vector<Flow> flows;
    bool operator==(const TransportPlan&) const = default;
};

struct Report {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
    std::string str() const;
};

struct CapExceeded : std::runtime_error {
    Integer size;
    CapExceeded(const Integer& s, const std::string& what)
        : std::runtime_error(what), size(s) {}
};

Report validate_measure(const DiscreteMeasure& mu, std::size_t d, const std::string& name);
Report validate_instance(const ProblemInstance& inst);
// Marginal feasibility, positive masses, distinct tuples.
Report validate_combination(const CombinationMeasure& P, const ProblemInstance& inst);
Report validate_plan(const TransportPlan& plan, const DiscreteMeasure& P,
                     const ProblemInstance& inst);

Point weighted_mean(const Tuple& t, const ProblemInstance& inst);

Integer tuple_space_size(const ProblemInstance& inst);
// All of S* in lexicographic order. Throws CapExceeded if the product exceeds cap.
std::vector<Tuple> enumerate_tuples(const ProblemInstance& inst, std::uint64_t cap);
// Callback form, same order, no storage.
void for_each_tuple(const ProblemInstance& inst, std::uint64_t cap,
                    const std::function<void(const Tuple&)>& fn);

ProblemInstance gen_square_example(const Rational& side, const Rational& d = Rational(1, 2));
ProblemInstance gen_random(const std::vector<int>& n_i, std::size_t d, int coord_bound,
                           std::uint64_t seed);

// Merge coincident slots of every measure by summing masses.
ProblemInstance normalize(const ProblemInstance& inst);

// JSON formats. Rationals are strings "p/q".
nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);
nlohmann::json combination_to_json(const CombinationMeasure& P);
CombinationMeasure combination_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const TransportPlan& plan);
TransportPlan plan_from_json(const nlohmann::json& j);

Rational rational_from_json(const nlohmann::json& j);

// Reads a whole JSON file; throws ParseError with position info on failure.
nlohmann::json read_json_file(const std::string& path);
// Writes via a temporary file and rename.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace wb
