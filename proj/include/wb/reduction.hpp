#pragma once
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wb/measures.hpp"

namespace wb {

// ---------- P3DM ----------

struct P3dmInstance {
    std::vector<std::string> X, Y, Z;
    std::vector<std::array<std::string, 3>> triples;
    std::size_t q() const { return X.size(); }
};

Report validate_p3dm(const P3dmInstance& p);
nlohmann::json p3dm_to_json(const P3dmInstance& p);
P3dmInstance p3dm_from_json(const nlohmann::json& j);

struct P3dmDecision {
    bool yes = false;
    std::vector<std::size_t> cover;  // indices into triples
};

// Exact cover by backtracking; guarded to q <= max_q.
P3dmDecision p3dm_decide_bruteforce(const P3dmInstance& p, std::size_t max_q = 8);
bool is_exact_cover(const P3dmInstance& p, const std::vector<std::size_t>& cover);

// ---------- induced graph and layout ----------

struct InducedGraph {
    // Vertices 0..3q-1 are elements (X, then Y, then Z), then one per triple.
    std::vector<std::string> labels;
    std::vector<int> color;  // 1,2,3 for elements, 0 for triple vertices
    std::vector<std::pair<int, int>> edges;  // (element, triple vertex), triple-major order
    std::size_t num_elements = 0;
    std::size_t size() const { return labels.size(); }
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_planar(const InducedGraph& g);
InducedGraph induced_graph(const P3dmInstance& p);
std::string triple_label(const std::array<std::string, 3>& t);

struct GridPoint {
    long long x = 0, y = 0;
    auto operator<=>(const GridPoint&) const = default;
};

struct LayoutEdge {
    std::string from, to;
    std::vector<GridPoint> bends;
};

struct RectilinearLayout {
    std::map<std::string, GridPoint> vertices;
    std::vector<LayoutEdge> edges;
    long long scale = 1;  // factor applied since the unit layout
};

// Full polyline of an edge including both endpoints.
std::vector<GridPoint> edge_polyline(const RectilinearLayout& l, const LayoutEdge& e);
Report validate_layout(const RectilinearLayout& l, const InducedGraph* g = nullptr);
RectilinearLayout layout_rectilinear(const InducedGraph& g);

// Smaller factors leave too little room around triple triangles for the paths to
// arrive with the flip parity they need; 18 to 20 already fail on a single triple.
inline constexpr long long kMinScale = 21;
inline constexpr long long kDefaultScale = 21;
RectilinearLayout scale_layout(const RectilinearLayout& l, long long factor = kDefaultScale);

nlohmann::json layout_to_json(const RectilinearLayout& l);
RectilinearLayout layout_from_json(const nlohmann::json& j);

// ---------- gadget ----------

struct GPoint {
    long long x = 0, y = 0;
    auto operator<=>(const GPoint&) const = default;
};

enum class VertexRole { Element, TripleVertex, Path };
enum class TriangleKind { PathFirst, PathSecond, Triple, OffPath };

struct GadgetVertex {
    GPoint p;
    int color = 0;  // 1..3, index of the measure plus one
    VertexRole role = VertexRole::Path;
    int multiplicity = 1;
    std::string label;  // element label, or triple label for triple-triangle vertices
};

struct Triangle {
    std::array<int, 3> v{};  // vertex ids ordered by color 1,2,3
    TriangleKind kind = TriangleKind::PathFirst;
    int path = -1;   // for path triangles
    int index = -1;  // position along the path
    int triple = -1; // for triple triangles
};

struct GadgetRect {
    int in = -1, out = -1, a = -1, b = -1;  // vertex ids
    bool vertical = true;                   // 3 wide, 4 tall
};

struct TrianglePath {
    int element = -1;  // element vertex id
    int triple = -1;   // triple index
    std::vector<GadgetRect> rects;
    std::vector<int> triangles;  // 2 per rect, first then second
};

struct GadgetGraph {
    std::vector<GadgetVertex> vertices;
    std::vector<Triangle> triangles;
    std::vector<TrianglePath> paths;
    std::vector<std::string> element_labels;         // X, Y, Z order
    std::vector<int> element_vertex;                 // per element
    std::vector<std::array<std::string, 3>> triples;
    std::vector<int> triple_triangle;                // triangle id per triple
    std::size_t n = 0;
    // slot index of each vertex inside its color class
    std::vector<int> slot;

    int triangle_at(const std::array<GPoint, 3>& pts) const;  // by coordinates, -1 if none
};

struct GadgetOptions {
    long long corridor = 0;     // 0 picks a width from the scale
    int center_radius = 3;      // triple-triangle placement search radius
    std::size_t route_budget = 60000;
};

struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GadgetGraph build_gadget(const RectilinearLayout& scaled, const P3dmInstance& p, const GadgetOptions& opt = {});
Report validate_gadget(const GadgetGraph& g);
ProblemInstance emit_uc3p(const GadgetGraph& g);
CombinationMeasure construct_yes_barycenter(const GadgetGraph& g, const std::vector<std::size_t>& cover);

nlohmann::json gadget_to_json(const GadgetGraph& g);
GadgetGraph gadget_from_json(const nlohmann::json& j);

// Convenience: P3DM -> induced graph -> layout -> scale -> gadget.
GadgetGraph compile_p3dm(const P3dmInstance& p, long long scale = kDefaultScale, const GadgetOptions& opt = {});

}  // namespace wb
