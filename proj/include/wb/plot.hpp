#pragma once
#include <string>

#include "wb/measures.hpp"
#include "wb/reduction.hpp"

namespace wb {

// Gadget drawing. When `selected` is given its triangles are shaded.
std::string plot_svg(const GadgetGraph& g, const CombinationMeasure* selected = nullptr);
// Input measures as colored dots; with `bary` the weighted means are drawn as black crosses.
std::string plot_svg(const ProblemInstance& inst, const CombinationMeasure* bary = nullptr);

}  // namespace wb
