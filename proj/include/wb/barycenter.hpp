#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "wb/lp.hpp"
#include "wb/measures.hpp"

namespace wb {

struct BarycenterResult {
    CombinationMeasure measure;
    Rational value;
    std::size_t support_size = 0;
};

struct Decision {
    bool yes = false;
    std::optional<CombinationMeasure> witness;
    std::string note;
    std::uint64_t nodes = 0;
};

struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCap = 2'000'000;

// sum_i |P_i| - m + 1
std::size_t sparsity_bound(const ProblemInstance& inst);

// One column per tuple of `tuples`, one marginal row per input slot.
LinearProgram barycenter_lp(const ProblemInstance& inst, const std::vector<Tuple>& tuples);

BarycenterResult solve_exact(const ProblemInstance& inst, std::uint64_t cap = kDefaultCap,
                             const LpOptions& opt = {PricingRule::DantzigBland, 30});
BarycenterResult solve_1d(const ProblemInstance& inst);
BarycenterResult solve_2measures(const ProblemInstance& inst);

Decision decide_scmp(const ProblemInstance& inst, std::size_t N, const Rational& phi,
                     std::uint64_t cap = kDefaultCap, std::uint64_t subset_guard = 200'000);

// Perfect tripartite matchings of the slots with total cost <= n * phi.
// Exact branch and bound; node_guard bounds the search tree.
Decision uc3p_bruteforce(const ProblemInstance& inst, const Rational& phi,
                         std::uint64_t node_guard = 20'000'000);

}  // namespace wb
