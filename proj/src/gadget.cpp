// Gadget construction. The scaled layout is turned by 45 degrees, so every
// layout edge becomes a diagonal run of 3-4-5 rectangles. Each rectangle is
// split along one diagonal into two triangles:
//
//   a ---- out        first  = {in, a, b}
//   |    /  |         second = {a, b, out}
//   |  /    |
//   in ---- b         in/out carry the element color; a and b carry the
//                     other two colors in an order fixed by a 0/1 variable.
#include <algorithm>
#include <cstdlib>
#include <limits>
#include <functional>
#include <queue>
#include <set>
#include <unordered_map>

#include "wb/reduction.hpp"

namespace wb {

using nlohmann::json;

namespace {

constexpr long long kClear = 34;  // no feasible triple of cost <= 50/9 has a side with d^2 >= 34

long long d2(GPoint a, GPoint b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); }

struct Rect {
    GPoint in, out, a, b;
    bool V = true;
    int sx = 1, sy = 1;
    bool operator==(const Rect&) const = default;
};

Rect make_rect(GPoint in, int sx, int sy, bool V) {
    long long w = V ? 3 : 4, h = V ? 4 : 3;
    Rect r;
    r.in = in;
    r.out = {in.x + sx * w, in.y + sy * h};
    r.a = {in.x, r.out.y};
    r.b = {r.out.x, in.y};
    r.V = V;
    r.sx = sx;
    r.sy = sy;
    return r;
}

// Diagonal steps keep the heading; mirrors flip one sign and keep the shape.
std::array<Rect, 4> moves(const Rect& r) {
    return {make_rect(r.out, r.sx, r.sy, true), make_rect(r.out, r.sx, r.sy, false),
            make_rect(r.out, r.sx, -r.sy, r.V), make_rect(r.out, -r.sx, r.sy, r.V)};
}

bool has_point(const Rect& r, GPoint p) { return r.in == p || r.out == p || r.a == p || r.b == p; }

class PointSet {
public:
    void add(GPoint p) { cells_[key(p.x / 6 - (p.x < 0), p.y / 6 - (p.y < 0))].push_back(p); }
    void add(const Rect& r) {
        add(r.in);
        add(r.out);
        add(r.a);
        add(r.b);
    }
    bool near(GPoint p, long long lim) const {
        long long cx = p.x / 6 - (p.x < 0), cy = p.y / 6 - (p.y < 0);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end()) continue;
                for (const auto& q : it->second)
                    if (d2(p, q) < lim) return true;
            }
        return false;
    }

private:
    static long long key(long long x, long long y) { return (x + (1LL << 30)) * (1LL << 31) + (y + (1LL << 30)); }
    std::unordered_map<long long, std::vector<GPoint>> cells_;
};

struct Corridor {
    std::vector<std::pair<GPoint, GPoint>> segs;
    long long w2 = 0;
    bool contains(GPoint p) const {
        for (const auto& [A, B] : segs) {
            __int128 vx = B.x - A.x, vy = B.y - A.y, wx = p.x - A.x, wy = p.y - A.y;
            __int128 len2 = vx * vx + vy * vy, t = wx * vx + wy * vy;
            __int128 dd;
            if (len2 == 0 || t <= 0) {
                dd = wx * wx + wy * wy;
                if (dd <= w2) return true;
            } else if (t >= len2) {
                __int128 ux = p.x - B.x, uy = p.y - B.y;
                if (ux * ux + uy * uy <= w2) return true;
            } else {
                dd = (wx * wx + wy * wy) * len2 - t * t;
                if (dd <= static_cast<__int128>(w2) * len2) return true;
            }
        }
        return false;
    }
};

std::array<GPoint, 3> sorted3(GPoint a, GPoint b, GPoint c) {
    std::array<GPoint, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

// Local legality of appending m to chain.
bool legal(const std::vector<Rect>& chain, const Rect& m, const PointSet* obst, const Corridor* cor, bool reach) {
    const Rect& r = chain.back();
    std::array<GPoint, 2> ab{m.a, m.b};
    for (const auto& p : ab) {
        if (!has_point(r, p)) continue;
        if (p == r.in || p == r.out) return false;
        for (std::size_t h = 0; h + 1 < chain.size(); ++h)
            if (has_point(chain[h], p)) return false;  // would be a third copy
    }
    std::array<GPoint, 3> fresh{m.out, m.a, m.b};
    for (std::size_t idx = 0; idx < 3; ++idx) {
        GPoint p = fresh[idx];
        bool is_out = idx == 0;
        if (has_point(r, p)) continue;
        if (reach && is_out) continue;
        if (cor && !cor->contains(p)) return false;
        if (obst && obst->near(p, kClear)) return false;
        for (std::size_t back = 0; back + 1 < chain.size(); ++back) {
            const Rect& hr = chain[chain.size() - 2 - back];
            if (back == 0) {
                if (has_point(hr, p)) return false;
                continue;
            }
            std::array<std::pair<GPoint, bool>, 4> qs{
                std::make_pair(hr.in, true), std::make_pair(hr.out, true), std::make_pair(hr.a, false),
                std::make_pair(hr.b, false)};
            for (const auto& [q, junction] : qs) {
                if (is_out && junction && back < 8) {
                    if (p == q) return false;
                    continue;
                }
                if (d2(p, q) < kClear) return false;
            }
        }
    }
    return true;
}

struct ColoredPoint {
    GPoint p;
    int c;
};

// True when no three points of distinct colors form a cheap triple: summed squared
// sides below 50, or exactly 50 without being one of `own`. Coincident points must
// share a color. Triples through `soft` at exactly 50 are left to the caller.
bool no_cheap_rainbow(const std::vector<ColoredPoint>& in, const std::set<std::array<GPoint, 3>>& own,
                      std::optional<GPoint> soft = std::nullopt) {
    std::vector<ColoredPoint> pts;
    for (const auto& cp : in) {
        bool dup = false;
        for (const auto& q : pts)
            if (q.p == cp.p) {
                if (q.c != cp.c) return false;
                dup = true;
            }
        if (!dup) pts.push_back(cp);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i].c == pts[j].c) continue;
            long long dij = d2(pts[i].p, pts[j].p);
            if (dij >= kClear) continue;
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                if (pts[k].c == pts[i].c || pts[k].c == pts[j].c) continue;
                long long S = dij + d2(pts[i].p, pts[k].p) + d2(pts[j].p, pts[k].p);
                if (S > 50) continue;
                if (S == 50) {
                    if (own.count(sorted3(pts[i].p, pts[j].p, pts[k].p))) continue;
                    if (soft && (pts[i].p == *soft || pts[j].p == *soft || pts[k].p == *soft)) continue;
                }
                return false;
            }
        }
    return true;
}

void add_colored(const Rect& r, int junction, std::array<int, 2> corner, int flip, std::vector<ColoredPoint>& pts,
                 std::set<std::array<GPoint, 3>>& own) {
    pts.push_back({r.in, junction});
    pts.push_back({r.out, junction});
    pts.push_back({r.a, corner[flip]});
    pts.push_back({r.b, corner[1 - flip]});
    own.insert(sorted3(r.in, r.a, r.b));
    own.insert(sorted3(r.a, r.b, r.out));
}

// Inside one path the junctions get color 0 and the corners 1 and 2, swapped by the
// flip bit. Only the last two rects can sit close to a new one, so that window suffices.
bool colors_ok(const std::vector<Rect>& chain, const std::vector<int>& fs, const Rect& m, int fm) {
    std::vector<ColoredPoint> pts;
    std::set<std::array<GPoint, 3>> own;
    std::size_t from = chain.size() >= 2 ? chain.size() - 2 : 0;
    for (std::size_t i = from; i < chain.size(); ++i) add_colored(chain[i], 0, {1, 2}, fs[i], pts, own);
    add_colored(m, 0, {1, 2}, fm, pts, own);
    return no_cheap_rainbow(pts, own, chain.front().in);
}

struct Routed {
    std::vector<Rect> rects;  // after the head, ending with the goal
    std::vector<int> flips;
};

// A* over rect chains. want_flip (0/1) pins the flip bit of the goal rect; -1 accepts either.
std::optional<Routed> route(const std::vector<Rect>& head, const std::vector<int>& head_flips, const Rect& goal,
                            int want_flip, const PointSet& obst, const Corridor& cor, std::size_t budget,
                            bool* exhausted = nullptr) {
    struct Node {
        Rect r;
        int f;
        int parent;
        int g;
    };
    std::vector<Node> nodes;
    auto chain_of = [&](int idx, std::vector<Rect>& ch, std::vector<int>& fs) {
        ch = head;
        fs = head_flips;
        std::vector<int> ids;
        for (int i = idx; i >= 0; i = nodes[i].parent) ids.push_back(i);
        for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
            ch.push_back(nodes[*it].r);
            fs.push_back(nodes[*it].f);
        }
    };
    // Each step moves 3 along one axis and 4 along the other, which bounds the remaining steps.
    auto hval = [&](GPoint p) {
        long long dx = std::llabs(p.x - goal.in.x), dy = std::llabs(p.y - goal.in.y);
        return std::max((std::max(dx, dy) + 3) / 4, (dx + dy + 6) / 7);
    };
    using Key = std::tuple<long long, long long, int, int, bool, int>;
    std::map<Key, int> best_g;
    using QE = std::tuple<long long, long long, int, int>;  // g + h, h, seq, node index (-1 for the head)
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    pq.emplace(hval(head.back().out), hval(head.back().out), 0, -1);
    int seq = 1;
    std::size_t expanded = 0;
    std::vector<Rect> chain;
    std::vector<int> fs;
    while (!pq.empty()) {
        auto [f, h, s, idx] = pq.top();
        pq.pop();
        chain_of(idx, chain, fs);
        const Rect& r = chain.back();
        int g = idx < 0 ? 0 : nodes[idx].g;
        if (r.out == goal.in) {
            for (const auto& mv : moves(r)) {
                if (!(mv == goal) || !legal(chain, goal, nullptr, nullptr, false)) continue;
                for (int fg = 0; fg < 2; ++fg) {
                    if (want_flip >= 0 && fg != want_flip) continue;
                    if (!colors_ok(chain, fs, goal, fg)) continue;
                    Routed out;
                    out.rects.assign(chain.begin() + static_cast<long>(head.size()), chain.end());
                    out.flips.assign(fs.begin() + static_cast<long>(head.size()), fs.end());
                    out.rects.push_back(goal);
                    out.flips.push_back(fg);
                    return out;
                }
            }
        }
        if (++expanded > budget) return std::nullopt;
        for (const auto& mv : moves(r)) {
            bool reach = mv.out == goal.in;
            if (!legal(chain, mv, &obst, &cor, reach)) continue;
            for (int fm = 0; fm < 2; ++fm) {
                if (!colors_ok(chain, fs, mv, fm)) continue;
                Key k{mv.out.x, mv.out.y, mv.sx, mv.sy, mv.V, fm};
                int ng = g + 1;
                auto it = best_g.find(k);
                if (it != best_g.end() && it->second <= ng) continue;
                best_g[k] = ng;
                nodes.push_back({mv, fm, idx, ng});
                pq.emplace(ng + hval(mv.out), hval(mv.out), seq++, static_cast<int>(nodes.size()) - 1);
            }
        }
    }
    if (exhausted) *exhausted = true;
    return std::nullopt;
}

// Necessary condition for reaching `goal`: some chain of `depth` rects can lead into
// it with every fresh point inside the corridor and clear of the obstacles. Failing
// searches otherwise flood the whole corridor before giving up.
bool approach_possible(const Rect& goal, const PointSet& obst, const Corridor& cor, int depth) {
    if (depth == 0) return true;
    auto fine = [&](GPoint q) { return cor.contains(q) && !obst.near(q, kClear); };
    for (int V = 0; V < 2; ++V)
        for (int sx : {-1, 1})
            for (int sy : {-1, 1}) {
                long long w = V ? 3 : 4, h = V ? 4 : 3;
                Rect r = make_rect({goal.in.x - sx * w, goal.in.y - sy * h}, sx, sy, V);
                auto mv = moves(r);
                if (std::find(mv.begin(), mv.end(), goal) == mv.end()) continue;
                // r.out is the goal's entry point, which the search admits without checks.
                bool ok = fine(r.a) && fine(r.b) && (depth == 1 || fine(r.in));
                if (ok && approach_possible(r, obst, cor, depth - 1)) return true;
            }
    return false;
}

// Layout side -> diagonal quadrant after the rotation (x, y) -> (x - y, x + y).
std::pair<int, int> quadrant(int dir) {
    switch (dir) {
        case 0: return {1, 1};    // E
        case 1: return {-1, 1};   // N
        case 2: return {-1, -1};  // W
        default: return {1, -1};  // S
    }
}

int side_of(GridPoint from, GridPoint to) {
    if (to.x > from.x) return 0;
    if (to.y > from.y) return 1;
    if (to.x < from.x) return 2;
    return 3;
}

GPoint rot(GridPoint g) { return {g.x - g.y, g.x + g.y}; }

// Corner of the triple-triangle box around c in quadrant k. The wide box is 4 by 3,
// the tall one 3 by 4; any three corners make a 3-4-5 triangle.
GPoint tt_corner(GPoint c, std::pair<int, int> k, bool tall) {
    if (tall) return {k.first > 0 ? c.x + 2 : c.x - 1, c.y + 2 * k.second};
    return {c.x + 2 * k.first, k.second > 0 ? c.y + 2 : c.y - 1};
}

// Last rect of a path, ending at triple-triangle vertex v and lying in quadrant k of it.
Rect fin_rect(GPoint v, std::pair<int, int> k, bool vertical) {
    long long w = vertical ? 3 : 4, h = vertical ? 4 : 3;
    return make_rect({v.x + w * k.first, v.y + h * k.second}, -k.first, -k.second, vertical);
}

// Mirrors flip the corner colors and diagonal steps keep them, so the flip bit of a
// path's last rect relative to its first is the number of heading sign changes.
int heading_parity(std::pair<int, int> head, std::pair<int, int> fin_quadrant) {
    return ((head.first != -fin_quadrant.first) + (head.second != -fin_quadrant.second)) % 2;
}

std::array<int, 2> corner_colors(int element_color) {
    return {element_color == 1 ? 2 : 1, element_color == 3 ? 2 : 3};
}

struct TtVariant {
    bool tall = false;
    std::array<std::pair<int, int>, 3> quadrant;  // per member path
    std::array<bool, 3> vertical{};
    std::array<int, 3> flip{};  // required flip of each fin
    int mismatch = 0;           // fins not on the side the path arrives from
};

struct PathPlan {
    int element = -1;  // element index
    int triple = -1;
    int color = 0;
    std::vector<Rect> head;
    std::vector<int> head_flips;
    std::vector<Rect> rects;  // full chain once routed
    std::vector<int> flips;
    Corridor corridor;
    std::pair<int, int> tq;   // quadrant at the triple
    bool routed = false;
};

}  // namespace

int GadgetGraph::triangle_at(const std::array<GPoint, 3>& pts) const {
    auto key = sorted3(pts[0], pts[1], pts[2]);
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& v = triangles[t].v;
        if (sorted3(vertices[v[0]].p, vertices[v[1]].p, vertices[v[2]].p) == key) return static_cast<int>(t);
    }
    return -1;
}

namespace {

struct ColorConflict {
    int path;
    explicit ColorConflict(int p) : path(p) {}
};

GadgetGraph assemble(const std::vector<PathPlan>& plans, const P3dmInstance& p, const InducedGraph& ig,
                     const std::vector<GPoint>& epos) {
    const std::size_t E = ig.num_elements;
    const std::size_t T = p.triples.size();
    GadgetGraph g;
    g.triples = p.triples;
    for (std::size_t e = 0; e < E; ++e) {
        g.element_labels.push_back(ig.labels[e]);
        g.element_vertex.push_back(static_cast<int>(g.vertices.size()));
        g.vertices.push_back({epos[e], ig.color[e], VertexRole::Element, 1, ig.labels[e]});
    }
    // One flip variable per path; rect i of path p uses flip(p) xor flips[i].
    struct VarRef {
        int var = -1;
        bool is_a = false;
        int rel = 0;
    };
    std::vector<VarRef> vref;  // per vertex
    vref.resize(g.vertices.size());
    std::vector<std::array<int, 2>> other_colors;  // per var
    std::vector<int> var_path;
    for (std::size_t pi = 0; pi < plans.size(); ++pi) {
        const auto& pp = plans[pi];
        TrianglePath tp;
        tp.element = g.element_vertex[pp.element];
        tp.triple = pp.triple;
        int c1 = pp.color == 1 ? 2 : 1;
        int c2 = pp.color == 3 ? 2 : 3;
        int prev = tp.element;
        for (std::size_t i = 0; i < pp.rects.size(); ++i) {
            const Rect& r = pp.rects[i];
            GadgetRect gr;
            gr.in = prev;
            gr.vertical = r.V;
            int var = static_cast<int>(pi);
            if (i == 0) {
                other_colors.push_back({c1, c2});
                var_path.push_back(static_cast<int>(pi));
            }
            int rel = pp.flips[i];
            gr.a = static_cast<int>(g.vertices.size());
            g.vertices.push_back({r.a, 0, VertexRole::Path, 1, ""});
            vref.push_back({var, true, rel});
            gr.b = static_cast<int>(g.vertices.size());
            g.vertices.push_back({r.b, 0, VertexRole::Path, 1, ""});
            vref.push_back({var, false, rel});
            bool last = i + 1 == pp.rects.size();
            gr.out = static_cast<int>(g.vertices.size());
            g.vertices.push_back({r.out, pp.color, last ? VertexRole::TripleVertex : VertexRole::Path, 1,
                                  last ? triple_label(p.triples[pp.triple]) : ""});
            vref.push_back({});
            prev = gr.out;
            tp.rects.push_back(gr);
        }
        g.paths.push_back(std::move(tp));
    }

    // ---- coloring constraints ----
    const std::size_t V = g.vertices.size();
    const std::size_t nvars = other_colors.size();
    auto color_of = [&](std::size_t v, const std::vector<int>& asg) -> int {
        if (g.vertices[v].color) return g.vertices[v].color;
        const auto& vr = vref[v];
        int f = asg[vr.var];
        if (f < 0) return 0;
        f ^= vr.rel;
        const auto& oc = other_colors[vr.var];
        return (vr.is_a == (f == 0)) ? oc[0] : oc[1];
    };
    std::set<std::array<GPoint, 3>> gadget_tris;
    for (const auto& tp : g.paths)
        for (const auto& gr : tp.rects) {
            gadget_tris.insert(sorted3(g.vertices[gr.in].p, g.vertices[gr.a].p, g.vertices[gr.b].p));
            gadget_tris.insert(sorted3(g.vertices[gr.a].p, g.vertices[gr.b].p, g.vertices[gr.out].p));
        }
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<GPoint> vs;
        for (const auto& tp : g.paths)
            if (tp.triple == static_cast<int>(t)) vs.push_back(g.vertices[tp.rects.back().out].p);
        if (vs.size() == 3) gadget_tris.insert(sorted3(vs[0], vs[1], vs[2]));
    }
    // neighbour lists with d^2 < kClear
    std::unordered_map<long long, std::vector<int>> grid;
    auto cell = [](long long v) { return v / 6 - (v < 0); };
    auto gkey = [](long long x, long long y) { return (x + (1LL << 30)) * (1LL << 31) + (y + (1LL << 30)); };
    for (std::size_t v = 0; v < V; ++v) grid[gkey(cell(g.vertices[v].p.x), cell(g.vertices[v].p.y))].push_back(int(v));
    std::vector<std::vector<int>> near(V);
    for (std::size_t v = 0; v < V; ++v) {
        GPoint p0 = g.vertices[v].p;
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(gkey(cell(p0.x) + dx, cell(p0.y) + dy));
                if (it == grid.end()) continue;
                for (int w : it->second)
                    if (w != static_cast<int>(v) && d2(p0, g.vertices[w].p) < kClear) near[v].push_back(w);
            }
        std::sort(near[v].begin(), near[v].end());
    }
    struct Cheap {
        std::array<int, 3> v;
        long long S;
        bool soft;
    };
    std::vector<Cheap> cheap;
    for (std::size_t a = 0; a < V; ++a)
        for (int b : near[a]) {
            if (b <= static_cast<int>(a)) continue;
            for (int c : near[a]) {
                if (c <= b) continue;
                long long S = d2(g.vertices[a].p, g.vertices[b].p) + d2(g.vertices[a].p, g.vertices[c].p) +
                              d2(g.vertices[b].p, g.vertices[c].p);
                if (S > 50) continue;
                auto key = sorted3(g.vertices[a].p, g.vertices[b].p, g.vertices[c].p);
                if (S == 50 && gadget_tris.count(key)) continue;
                bool touches_element = g.vertices[a].role == VertexRole::Element ||
                                       g.vertices[b].role == VertexRole::Element ||
                                       g.vertices[c].role == VertexRole::Element;
                cheap.push_back({{static_cast<int>(a), b, c}, S, S == 50 && touches_element});
            }
        }
    // duplicate coordinates must share a color
    std::map<GPoint, std::vector<int>> same;
    for (std::size_t v = 0; v < V; ++v) same[g.vertices[v].p].push_back(static_cast<int>(v));
    std::vector<std::array<int, 2>> equal;
    for (const auto& [pt, vs] : same) {
        if (vs.size() > 2)
            throw RoutingError("coordinate (" + std::to_string(pt.x) + "," + std::to_string(pt.y) +
                               ") would be repeated more than twice");
        if (vs.size() == 2) equal.push_back({vs[0], vs[1]});
    }
    auto max_var = [&](std::initializer_list<int> vs) {
        int m = -1;
        for (int v : vs)
            if (!g.vertices[v].color) m = std::max(m, vref[v].var);
        return m;
    };
    std::vector<std::vector<int>> cheap_at(nvars), equal_at(nvars);
    std::vector<int> fixed_cheap;
    for (std::size_t i = 0; i < cheap.size(); ++i) {
        if (cheap[i].soft) continue;
        int mv = max_var({cheap[i].v[0], cheap[i].v[1], cheap[i].v[2]});
        if (mv < 0)
            fixed_cheap.push_back(static_cast<int>(i));
        else
            cheap_at[mv].push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < equal.size(); ++i) {
        int mv = max_var({equal[i][0], equal[i][1]});
        if (mv < 0) {
            if (g.vertices[equal[i][0]].color != g.vertices[equal[i][1]].color)
                throw RoutingError("fixed duplicate vertices with different colors");
        } else {
            equal_at[mv].push_back(static_cast<int>(i));
        }
    }
    std::vector<int> asg(nvars, -1);
    auto rainbow = [&](const Cheap& c) {
        int x = color_of(c.v[0], asg), y = color_of(c.v[1], asg), z = color_of(c.v[2], asg);
        return x && y && z && x != y && x != z && y != z;
    };
    for (int i : fixed_cheap)
        if (rainbow(cheap[i])) throw RoutingError("unavoidable cheap triple between fixed vertices");
    std::size_t nodes = 0;
    std::function<bool(std::size_t)> solve = [&](std::size_t k) -> bool {
        if (k == nvars) return true;
        if (++nodes > 2'000'000) throw RoutingError("vertex coloring search exceeded its budget");
        for (int f = 0; f < 2; ++f) {
            asg[k] = f;
            bool ok = true;
            for (int i : cheap_at[k])
                if (rainbow(cheap[i])) {
                    ok = false;
                    break;
                }
            for (int i : equal_at[k])
                if (ok && color_of(equal[i][0], asg) != color_of(equal[i][1], asg)) ok = false;
            if (ok && solve(k + 1)) return true;
        }
        asg[k] = -1;
        return false;
    };
    if (!solve(0)) {
        // Smallest unsatisfiable prefix of the variable order points at the culprit path.
        std::size_t lo = 1, hi = nvars;
        auto prefix_unsat = [&](std::size_t k) {
            auto sc = cheap_at, se = equal_at;
            for (std::size_t j = k; j < nvars; ++j) {
                cheap_at[j].clear();
                equal_at[j].clear();
            }
            std::fill(asg.begin(), asg.end(), -1);
            nodes = 0;
            bool ok = solve(0);
            cheap_at = std::move(sc);
            equal_at = std::move(se);
            return !ok;
        };
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (prefix_unsat(mid))
                hi = mid;
            else
                lo = mid + 1;
        }
        throw ColorConflict(var_path[lo - 1]);
    }
    for (std::size_t v = 0; v < V; ++v) g.vertices[v].color = color_of(v, asg);

    // ---- triangles ----
    auto ordered = [&](int x, int y, int z) {
        std::array<int, 3> out{-1, -1, -1};
        for (int v : {x, y, z}) out[g.vertices[v].color - 1] = v;
        return out;
    };
    for (std::size_t pi = 0; pi < g.paths.size(); ++pi) {
        auto& tp = g.paths[pi];
        for (std::size_t i = 0; i < tp.rects.size(); ++i) {
            const auto& gr = tp.rects[i];
            Triangle t1{ordered(gr.in, gr.a, gr.b), TriangleKind::PathFirst, int(pi), int(2 * i), tp.triple};
            Triangle t2{ordered(gr.a, gr.b, gr.out), TriangleKind::PathSecond, int(pi), int(2 * i + 1), tp.triple};
            tp.triangles.push_back(static_cast<int>(g.triangles.size()));
            g.triangles.push_back(t1);
            tp.triangles.push_back(static_cast<int>(g.triangles.size()));
            g.triangles.push_back(t2);
        }
    }
    g.triple_triangle.assign(T, -1);
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<int> vs;
        for (const auto& tp : g.paths)
            if (tp.triple == static_cast<int>(t)) vs.push_back(tp.rects.back().out);
        Triangle tt{ordered(vs[0], vs[1], vs[2]), TriangleKind::Triple, -1, -1, static_cast<int>(t)};
        g.triple_triangle[t] = static_cast<int>(g.triangles.size());
        g.triangles.push_back(tt);
    }
    for (const auto& c : cheap)
        if (c.S == 50 && rainbow(c) && !gadget_tris.count(sorted3(g.vertices[c.v[0]].p, g.vertices[c.v[1]].p,
                                                                     g.vertices[c.v[2]].p))) {
            Triangle off{ordered(c.v[0], c.v[1], c.v[2]), TriangleKind::OffPath, -1, -1, -1};
            g.triangles.push_back(off);
        }
    for (const auto& [pt, vs] : same)
        for (int v : vs) g.vertices[v].multiplicity = static_cast<int>(vs.size());
    std::array<int, 3> cnt{0, 0, 0};
    g.slot.resize(V);
    for (std::size_t v = 0; v < V; ++v) g.slot[v] = cnt[g.vertices[v].color - 1]++;
    g.n = static_cast<std::size_t>(cnt[0]);
    Report rep = validate_gadget(g);
    if (!rep.ok()) throw std::logic_error("gadget self-check failed: " + rep.str());
    return g;
}


}  // namespace

GadgetGraph build_gadget(const RectilinearLayout& l, const P3dmInstance& p, const GadgetOptions& opt) {
    InducedGraph ig = induced_graph(p);
    Report lr = validate_layout(l, &ig);
    if (!lr.ok()) throw InputError("layout rejected: " + lr.str());
    if (l.scale < kMinScale)
        throw InputError("layout scale " + std::to_string(l.scale) + " is below the clearance minimum");
    const long long cw = opt.corridor > 0 ? opt.corridor : std::max<long long>(8, (3 * l.scale) / 5);

    const std::size_t E = ig.num_elements;
    std::vector<GPoint> epos(E);
    for (std::size_t e = 0; e < E; ++e) epos[e] = rot(l.vertices.at(ig.labels[e]));

    std::map<std::pair<std::string, std::string>, const LayoutEdge*> by_ends;
    for (const auto& le : l.edges) by_ends[{le.from, le.to}] = &le;

    std::vector<PathPlan> plans;
    for (const auto& [ev, tv] : ig.edges) {
        const LayoutEdge* le = by_ends.at({ig.labels[ev], ig.labels[tv]});
        auto poly = edge_polyline(l, *le);
        PathPlan pp;
        pp.element = ev;
        pp.triple = tv - static_cast<int>(E);
        pp.color = ig.color[ev];
        auto q = quadrant(side_of(poly[0], poly[1]));
        Rect r0 = make_rect(epos[ev], q.first, q.second, true);
        Rect r1 = make_rect(r0.out, q.first, q.second, false);
        pp.head = {r0, r1};
        pp.head_flips = {0, colors_ok({r0}, {0}, r1, 0) ? 0 : 1};
        pp.tq = quadrant(side_of(poly.back(), poly[poly.size() - 2]));
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) pp.corridor.segs.push_back({rot(poly[i]), rot(poly[i + 1])});
        pp.corridor.w2 = cw * cw;
        plans.push_back(std::move(pp));
    }

    auto obstacles_for = [&](std::size_t pi, const std::vector<Rect>& extra) {
        PointSet ps;
        const auto& me = plans[pi];
        for (std::size_t e = 0; e < E; ++e)
            if (static_cast<int>(e) != me.element) ps.add(epos[e]);
        for (std::size_t o = 0; o < plans.size(); ++o) {
            if (o == pi) continue;
            const auto& op = plans[o];
            for (const auto& r : op.routed ? op.rects : op.head) ps.add(r);
        }
        for (const auto& r : extra) ps.add(r);
        return ps;
    };

    // Flip bits along a path are fixed by its headings up to one global flip g per
    // path. Heads meeting at an element and fins meeting at a triple triangle constrain
    // these flips, so each triple picks a box shape, corner assignment and fin shapes,
    // and the g values are chosen jointly before any routing happens.
    const std::size_t T = p.triples.size();
    const std::array<std::pair<int, int>, 4> quads{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    std::vector<std::vector<std::size_t>> members(T);
    for (std::size_t i = 0; i < plans.size(); ++i) members[plans[i].triple].push_back(i);
    for (auto& mem : members) {
        std::sort(mem.begin(), mem.end(), [&](std::size_t x, std::size_t y) { return plans[x].color < plans[y].color; });
        if (mem.size() != 3) throw InputError("every triple needs exactly three incident edges");
    }
    std::vector<std::array<std::vector<TtVariant>, 8>> by_g(T);
    for (std::size_t t = 0; t < T; ++t) {
        for (int tall = 0; tall < 2; ++tall)
            for (int q0 = 0; q0 < 4; ++q0)
                for (int q1 = 0; q1 < 4; ++q1)
                    for (int q2 = 0; q2 < 4; ++q2) {
                        if (q0 == q1 || q0 == q2 || q1 == q2) continue;
                        for (int mask = 0; mask < 8; ++mask)
                            for (int fs = 0; fs < 8; ++fs) {
                                TtVariant v;
                                v.tall = tall;
                                v.quadrant = {quads[q0], quads[q1], quads[q2]};
                                std::vector<ColoredPoint> pts;
                                std::set<std::array<GPoint, 3>> own;
                                std::array<GPoint, 3> corner;
                                int code = 0;
                                for (int k = 0; k < 3; ++k) {
                                    const auto& pp = plans[members[t][k]];
                                    v.vertical[k] = !(mask >> k & 1);
                                    v.flip[k] = fs >> k & 1;
                                    v.mismatch += v.quadrant[k] != pp.tq;
                                    corner[k] = tt_corner({0, 0}, v.quadrant[k], v.tall);
                                    add_colored(fin_rect(corner[k], v.quadrant[k], v.vertical[k]), pp.color,
                                                corner_colors(pp.color), v.flip[k], pts, own);
                                    int hp = heading_parity({pp.head[0].sx, pp.head[0].sy}, v.quadrant[k]);
                                    code |= (v.flip[k] ^ hp) << k;
                                }
                                own.insert(sorted3(corner[0], corner[1], corner[2]));
                                if (no_cheap_rainbow(pts, own)) by_g[t][code].push_back(v);
                            }
                    }
        for (auto& lst : by_g[t])
            std::stable_sort(lst.begin(), lst.end(),
                             [](const TtVariant& x, const TtVariant& y) { return x.mismatch < y.mismatch; });
    }
    std::vector<std::vector<std::size_t>> at_element(E);
    for (std::size_t i = 0; i < plans.size(); ++i) at_element[plans[i].element].push_back(i);
    auto heads_ok = [&](std::size_t e, const std::vector<int>& g) {
        std::vector<ColoredPoint> pts;
        std::set<std::array<GPoint, 3>> own;
        for (auto i : at_element[e]) {
            const auto& pp = plans[i];
            for (int h = 0; h < 2; ++h)
                add_colored(pp.head[h], pp.color, corner_colors(pp.color), g[i] ^ pp.head_flips[h], pts, own);
        }
        return no_cheap_rainbow(pts, own, epos[e]);
    };

    // A route that ran out of moves is treated as hopeless for later attempts at the
    // same fin, even though the surrounding obstacles may differ slightly.
    using FinKey = std::tuple<std::size_t, long long, long long, int, int, bool, int>;
    std::set<FinKey> dead_fins;
    // Successful routes are reused when they still clear the current obstacles.
    std::map<FinKey, Routed> found;
    auto still_clear = [](const Routed& r, const PointSet& obst) {
        for (std::size_t i = 0; i + 1 < r.rects.size(); ++i)
            for (GPoint q : {r.rects[i].out, r.rects[i].a, r.rects[i].b})
                if (obst.near(q, kClear)) return false;
        return true;
    };
    std::vector<std::array<bool, 8>> banned(T);
    for (auto& b : banned) b.fill(false);
    for (int round = 0;; ++round) {
        std::vector<int> g(plans.size(), -1), code(T, -1), best_code;
        long long best_cost = std::numeric_limits<long long>::max();
        std::size_t nodes = 0;
        std::function<void(std::size_t, long long)> dfs = [&](std::size_t t, long long cost) {
            if (cost >= best_cost || ++nodes > 1'000'000) return;
            if (t == T) {
                best_cost = cost;
                best_code = code;
                return;
            }
            std::vector<int> opts;
            for (int c = 0; c < 8; ++c)
                if (!by_g[t][c].empty() && !banned[t][c]) opts.push_back(c);
            std::stable_sort(opts.begin(), opts.end(), [&](int x, int y) {
                return by_g[t][x].front().mismatch < by_g[t][y].front().mismatch;
            });
            for (int c : opts) {
                for (int k = 0; k < 3; ++k) g[members[t][k]] = c >> k & 1;
                bool ok = true;
                for (int k = 0; k < 3 && ok; ++k) {
                    std::size_t e = static_cast<std::size_t>(plans[members[t][k]].element);
                    bool complete = true;
                    for (auto i : at_element[e]) complete = complete && g[i] >= 0;
                    if (complete) ok = heads_ok(e, g);
                }
                if (ok) {
                    code[t] = c;
                    dfs(t + 1, cost + by_g[t][c].front().mismatch);
                    code[t] = -1;
                }
                for (int k = 0; k < 3; ++k) g[members[t][k]] = -1;
            }
        };
        dfs(0, 0);
        if (best_code.empty())
            throw RoutingError("no choice of triple-triangle shapes gives the paths a consistent coloring");

        for (auto& pp : plans) {
            pp.rects.clear();
            pp.routed = false;
        }
        std::optional<std::size_t> failed;
        for (std::size_t t = 0; t < T && !failed; ++t) {
            const int c = best_code[t];
            GPoint base = rot(l.vertices.at(ig.labels[E + t]));
            const int R = opt.center_radius;
            std::vector<std::pair<int, int>> offsets;
            for (int dx = -R; dx <= R; ++dx)
                for (int dy = -R; dy <= R; ++dy) offsets.push_back({dx, dy});
            std::stable_sort(offsets.begin(), offsets.end(), [](auto x, auto y) {
                return x.first * x.first + x.second * x.second < y.first * y.first + y.second * y.second;
            });
            // Fins must clear everything outside their own triple triangle.
            std::array<PointSet, 3> fixed_obst;
            for (int k = 0; k < 3; ++k) fixed_obst[k] = obstacles_for(members[t][k], {});
            long long best_len = -1;
            std::vector<Routed> best;
            for (const auto& v : by_g[t][c]) {
                if (best_len >= 0) break;
                for (auto [dx, dy] : offsets) {
                    if (best_len >= 0) break;
                    GPoint ctr{base.x + dx, base.y + dy};
                    std::vector<Rect> fins;
                    for (int k = 0; k < 3; ++k)
                        fins.push_back(
                            fin_rect(tt_corner(ctr, v.quadrant[k], v.tall), v.quadrant[k], v.vertical[k]));
                    bool clear = true;
                    for (int k = 0; k < 3 && clear; ++k)
                        for (GPoint q : {fins[k].in, fins[k].a, fins[k].b, fins[k].out})
                            if (fixed_obst[k].near(q, kClear)) clear = false;
                    if (!clear) continue;
                    std::vector<Routed> chains;
                    std::vector<Rect> done_rects;
                    long long total = 0;
                    bool ok = true;
                    for (std::size_t k = 0; k < 3 && ok; ++k) {
                        std::vector<Rect> extra = done_rects;
                        for (std::size_t o = 0; o < 3; ++o)
                            if (o != k) extra.push_back(fins[o]);
                        PointSet obst = obstacles_for(members[t][k], extra);
                        const auto& pp = plans[members[t][k]];
                        int want = v.flip[k] ^ (c >> k & 1);  // relative to the first rect
                        const Rect& fk = fins[k];
                        FinKey fkey{members[t][k], fk.in.x, fk.in.y, fk.sx, fk.sy, fk.V, want};
                        if (dead_fins.count(fkey)) {
                            ok = false;
                            break;
                        }
                        if (!approach_possible(fk, obst, pp.corridor, 6)) {
                            dead_fins.insert(fkey);
                            ok = false;
                            break;
                        }
                        std::optional<Routed> mid;
                        if (auto it = found.find(fkey); it != found.end() && still_clear(it->second, obst)) {
                            mid = it->second;
                        } else {
                            bool exhausted = false;
                            mid = route(pp.head, pp.head_flips, fk, want, obst, pp.corridor, opt.route_budget,
                                        &exhausted);
                            if (!mid) {
                                if (exhausted) dead_fins.insert(fkey);
                                ok = false;
                                break;
                            }
                            found[fkey] = *mid;
                        }
                        Routed full{pp.head, pp.head_flips};
                        full.rects.insert(full.rects.end(), mid->rects.begin(), mid->rects.end());
                        full.flips.insert(full.flips.end(), mid->flips.begin(), mid->flips.end());
                        total += static_cast<long long>(full.rects.size());
                        done_rects.insert(done_rects.end(), full.rects.begin() + 2, full.rects.end());
                        chains.push_back(std::move(full));
                    }
                    if (ok) {
                        best_len = total;
                        best = std::move(chains);
                    }
                }
            }
            if (best_len < 0) {
                failed = t;
                break;
            }
            for (std::size_t k = 0; k < 3; ++k) {
                plans[members[t][k]].rects = best[k].rects;
                plans[members[t][k]].flips = best[k].flips;
                plans[members[t][k]].routed = true;
            }
        }
        if (!failed) break;
        banned[*failed][best_code[*failed]] = true;
        if (round >= 64) {
            const auto& tr = p.triples[*failed];
            throw RoutingError("no triangle-path routing found for triple " + triple_label(tr) + " (edges from " +
                               tr[0] + ", " + tr[1] + ", " + tr[2] + ")");
        }
    }
    try {
        return assemble(plans, p, ig, epos);
    } catch (const ColorConflict& cc) {
        throw RoutingError("no vertex coloring avoids cheap foreign triples near triple " +
                           triple_label(p.triples[plans[cc.path].triple]));
    }
}

Report validate_gadget(const GadgetGraph& g) {
    Report r;
    const std::size_t V = g.vertices.size();
    auto bad = [&](const std::string& s) { r.errors.push_back(s); };
    std::array<std::size_t, 3> cnt{0, 0, 0};
    for (std::size_t v = 0; v < V; ++v) {
        int c = g.vertices[v].color;
        if (c < 1 || c > 3) {
            bad("vertex " + std::to_string(v) + " has no color");
            continue;
        }
        ++cnt[c - 1];
    }
    if (cnt[0] != cnt[1] || cnt[0] != cnt[2])
        bad("color classes have sizes " + std::to_string(cnt[0]) + "/" + std::to_string(cnt[1]) + "/" +
            std::to_string(cnt[2]));
    if (cnt[0] != g.n) bad("n = " + std::to_string(g.n) + " but color class 1 has " + std::to_string(cnt[0]));
    std::map<GPoint, std::vector<int>> same;
    for (std::size_t v = 0; v < V; ++v) same[g.vertices[v].p].push_back(static_cast<int>(v));
    for (const auto& [pt, vs] : same) {
        if (vs.size() > 2)
            bad("coordinate (" + std::to_string(pt.x) + "," + std::to_string(pt.y) + ") repeated " +
                std::to_string(vs.size()) + " times");
        for (int v : vs) {
            if (g.vertices[v].multiplicity != static_cast<int>(vs.size()))
                bad("vertex " + std::to_string(v) + " has wrong multiplicity");
            if (g.vertices[v].color != g.vertices[vs[0]].color)
                bad("duplicate vertices at (" + std::to_string(pt.x) + "," + std::to_string(pt.y) +
                    ") differ in color");
        }
    }
    auto is345 = [&](const Triangle& t) {
        std::array<GPoint, 3> p{g.vertices[t.v[0]].p, g.vertices[t.v[1]].p, g.vertices[t.v[2]].p};
        std::array<long long, 3> s{d2(p[0], p[1]), d2(p[0], p[2]), d2(p[1], p[2])};
        std::sort(s.begin(), s.end());
        if (s != std::array<long long, 3>{9, 16, 25}) return false;
        // legs axis-aligned: the right-angle vertex shares x with one and y with the other
        for (int k = 0; k < 3; ++k) {
            GPoint c = p[k], u = p[(k + 1) % 3], w = p[(k + 2) % 3];
            if ((c.x == u.x && c.y == w.y) || (c.y == u.y && c.x == w.x)) return true;
        }
        return false;
    };
    for (std::size_t t = 0; t < g.triangles.size(); ++t) {
        const auto& tri = g.triangles[t];
        bool in_range = true;
        for (int v : tri.v) in_range = in_range && v >= 0 && static_cast<std::size_t>(v) < V;
        if (!in_range) {
            bad("triangle " + std::to_string(t) + " references a missing vertex");
            continue;
        }
        for (int k = 0; k < 3; ++k)
            if (g.vertices[tri.v[k]].color != k + 1)
                bad("triangle " + std::to_string(t) + " does not use three distinct colors");
        if (!is345(tri)) bad("triangle " + std::to_string(t) + " is not an axis-aligned 3-4-5 triangle");
    }
    std::map<int, int> paths_at;
    for (std::size_t pi = 0; pi < g.paths.size(); ++pi) {
        const auto& tp = g.paths[pi];
        std::string name = "path " + std::to_string(pi);
        ++paths_at[tp.element];
        if (tp.rects.size() < 3) {
            bad(name + " is too short");
            continue;
        }
        if (!tp.rects[0].vertical) bad(name + ": first pair must have the long side vertical");
        if (tp.rects[1].vertical) bad(name + ": second pair must have the long side horizontal");
        if (tp.triangles.size() % 2) bad(name + " has an odd number of triangles");
        if (tp.triangles.size() != 2 * tp.rects.size()) bad(name + ": triangle count mismatch");
        if (tp.rects[0].in != tp.element) bad(name + " does not start at its element point");
        for (std::size_t i = 1; i < tp.rects.size(); ++i)
            if (tp.rects[i].in != tp.rects[i - 1].out) bad(name + " is not contiguous at rect " + std::to_string(i));
        if (g.vertices[tp.rects.back().out].role != VertexRole::TripleVertex)
            bad(name + " does not end at a triple-triangle vertex");
        for (std::size_t i = 0; i < tp.rects.size(); ++i) {
            const auto& gr = tp.rects[i];
            int ec = g.vertices[tp.element].color;
            if (g.vertices[gr.in].color != ec || g.vertices[gr.out].color != ec)
                bad(name + ": junction color differs from the element color");
            GPoint in = g.vertices[gr.in].p, out = g.vertices[gr.out].p, a = g.vertices[gr.a].p, b = g.vertices[gr.b].p;
            long long w = std::llabs(out.x - in.x), h = std::llabs(out.y - in.y);
            if (!((gr.vertical && w == 3 && h == 4) || (!gr.vertical && w == 4 && h == 3)))
                bad(name + ": rect " + std::to_string(i) + " has wrong shape");
            if (!(a == GPoint{in.x, out.y}) || !(b == GPoint{out.x, in.y}))
                bad(name + ": rect " + std::to_string(i) + " has misplaced corners");
        }
    }
    for (const auto& [v, k] : paths_at)
        if (k > 3) bad("element vertex " + std::to_string(v) + " touches " + std::to_string(k) + " paths");
    for (std::size_t t = 0; t < g.triple_triangle.size(); ++t) {
        int id = g.triple_triangle[t];
        if (id < 0 || static_cast<std::size_t>(id) >= g.triangles.size() ||
            g.triangles[id].kind != TriangleKind::Triple)
            bad("triple " + std::to_string(t) + " has no triple triangle");
    }
    // No feasible triple may be cheaper than 50/9, i.e. summed squared sides < 50.
    std::map<std::pair<long long, long long>, std::vector<int>> grid;
    auto cell = [](long long v) { return v / 6 - (v < 0); };
    for (std::size_t v = 0; v < V; ++v) grid[{cell(g.vertices[v].p.x), cell(g.vertices[v].p.y)}].push_back(int(v));
    for (std::size_t a = 0; a < V && r.errors.size() < 50; ++a) {
        std::vector<int> nb;
        GPoint pa = g.vertices[a].p;
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({cell(pa.x) + dx, cell(pa.y) + dy});
                if (it == grid.end()) continue;
                for (int w : it->second)
                    if (w > static_cast<int>(a) && d2(pa, g.vertices[w].p) < kClear) nb.push_back(w);
            }
        for (int b : nb)
            for (int c : nb) {
                if (c <= b) continue;
                int ca = g.vertices[a].color, cb = g.vertices[b].color, cc = g.vertices[c].color;
                if (ca == cb || ca == cc || cb == cc) continue;
                long long S = d2(pa, g.vertices[b].p) + d2(pa, g.vertices[c].p) + d2(g.vertices[b].p, g.vertices[c].p);
                if (S < 50)
                    bad("feasible triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                        ") is cheaper than 50/9");
            }
    }
    return r;
}

ProblemInstance emit_uc3p(const GadgetGraph& g) {
    Report r = validate_gadget(g);
    if (!r.ok()) throw InputError("gadget is not valid: " + r.str());
    ProblemInstance inst;
    inst.d = 2;
    const Rational third(1, 3);
    inst.weights = {third, third, third};
    inst.measures.resize(3);
    const Rational mass(1, static_cast<long>(g.n));
    for (const auto& v : g.vertices)
        inst.measures[v.color - 1].points.push_back({{Rational(static_cast<long>(v.p.x)), Rational(static_cast<long>(v.p.y))}, mass});
    for (const auto& mu : inst.measures)
        if (mu.size() != g.n) throw InputError("color class size mismatch");
    return inst;
}

namespace {
P3dmInstance gadget_p3dm(const GadgetGraph& g) {
    P3dmInstance p;
    for (std::size_t e = 0; e < g.element_labels.size(); ++e) {
        int c = g.vertices[g.element_vertex[e]].color;
        (c == 1 ? p.X : c == 2 ? p.Y : p.Z).push_back(g.element_labels[e]);
    }
    p.triples = g.triples;
    return p;
}
}  // namespace

CombinationMeasure construct_yes_barycenter(const GadgetGraph& g, const std::vector<std::size_t>& cover) {
    if (!is_exact_cover(gadget_p3dm(g), cover)) throw InputError("the given triples are not an exact cover");
    std::set<int> chosen(cover.begin(), cover.end());
    std::vector<int> tris;
    for (const auto& tp : g.paths) {
        std::size_t start = chosen.count(tp.triple) ? 0 : 1;
        for (std::size_t i = start; i < tp.triangles.size(); i += 2) tris.push_back(tp.triangles[i]);
    }
    for (auto t : cover) tris.push_back(g.triple_triangle[t]);
    CombinationMeasure P;
    const Rational mass(1, static_cast<long>(g.n));
    for (int t : tris) {
        const auto& v = g.triangles[t].v;
        P.entries.push_back({{g.slot[v[0]], g.slot[v[1]], g.slot[v[2]]}, mass});
    }
    std::sort(P.entries.begin(), P.entries.end(),
              [](const CombinationEntry& a, const CombinationEntry& b) { return a.tuple < b.tuple; });
    if (P.entries.size() != g.n) throw std::logic_error("YES construction produced the wrong number of entries");
    return P;
}

namespace {
const char* role_name(VertexRole r) {
    switch (r) {
        case VertexRole::Element: return "element";
        case VertexRole::TripleVertex: return "triple";
        default: return "path";
    }
}
const char* kind_name(TriangleKind k) {
    switch (k) {
        case TriangleKind::PathFirst: return "first";
        case TriangleKind::PathSecond: return "second";
        case TriangleKind::Triple: return "triple";
        default: return "offpath";
    }
}
}  // namespace

json gadget_to_json(const GadgetGraph& g) {
    json vs = json::array();
    for (const auto& v : g.vertices)
        vs.push_back({{"x", v.p.x}, {"y", v.p.y}, {"color", v.color}, {"role", role_name(v.role)},
                      {"multiplicity", v.multiplicity}, {"label", v.label}});
    json ts = json::array();
    for (const auto& t : g.triangles)
        ts.push_back({{"v", t.v}, {"kind", kind_name(t.kind)}, {"path", t.path}, {"index", t.index},
                      {"triple", t.triple}});
    json ps = json::array();
    for (const auto& tp : g.paths) {
        json rs = json::array();
        for (const auto& r : tp.rects)
            rs.push_back({{"in", r.in}, {"out", r.out}, {"a", r.a}, {"b", r.b}, {"vertical", r.vertical}});
        ps.push_back({{"element", tp.element}, {"triple", tp.triple}, {"rects", rs}, {"triangles", tp.triangles}});
    }
    json es = json::array();
    for (std::size_t e = 0; e < g.element_labels.size(); ++e)
        es.push_back({{"label", g.element_labels[e]}, {"vertex", g.element_vertex[e]}});
    json tr = json::array();
    for (std::size_t t = 0; t < g.triples.size(); ++t)
        tr.push_back({{"labels", g.triples[t]}, {"triangle", g.triple_triangle[t]}});
    return {{"n", g.n}, {"vertices", vs}, {"triangles", ts}, {"paths", ps}, {"elements", es}, {"triples", tr}};
}

GadgetGraph gadget_from_json(const json& j) {
    try {
        GadgetGraph g;
        g.n = j.at("n").get<std::size_t>();
        for (const auto& v : j.at("vertices")) {
            GadgetVertex gv;
            gv.p = {v.at("x").get<long long>(), v.at("y").get<long long>()};
            gv.color = v.at("color").get<int>();
            std::string role = v.at("role").get<std::string>();
            gv.role = role == "element" ? VertexRole::Element
                      : role == "triple" ? VertexRole::TripleVertex
                                         : VertexRole::Path;
            gv.multiplicity = v.value("multiplicity", 1);
            gv.label = v.value("label", std::string());
            g.vertices.push_back(gv);
        }
        for (const auto& t : j.at("triangles")) {
            Triangle tri;
            tri.v = t.at("v").get<std::array<int, 3>>();
            std::string k = t.at("kind").get<std::string>();
            tri.kind = k == "first"    ? TriangleKind::PathFirst
                       : k == "second" ? TriangleKind::PathSecond
                       : k == "triple" ? TriangleKind::Triple
                                       : TriangleKind::OffPath;
            tri.path = t.value("path", -1);
            tri.index = t.value("index", -1);
            tri.triple = t.value("triple", -1);
            g.triangles.push_back(tri);
        }
        for (const auto& pj : j.at("paths")) {
            TrianglePath tp;
            tp.element = pj.at("element").get<int>();
            tp.triple = pj.at("triple").get<int>();
            for (const auto& r : pj.at("rects"))
                tp.rects.push_back({r.at("in").get<int>(), r.at("out").get<int>(), r.at("a").get<int>(),
                                    r.at("b").get<int>(), r.at("vertical").get<bool>()});
            tp.triangles = pj.at("triangles").get<std::vector<int>>();
            g.paths.push_back(std::move(tp));
        }
        for (const auto& e : j.at("elements")) {
            g.element_labels.push_back(e.at("label").get<std::string>());
            g.element_vertex.push_back(e.at("vertex").get<int>());
        }
        for (const auto& t : j.at("triples")) {
            g.triples.push_back(t.at("labels").get<std::array<std::string, 3>>());
            g.triple_triangle.push_back(t.at("triangle").get<int>());
        }
        std::array<int, 3> cnt{0, 0, 0};
        for (const auto& v : g.vertices) {
            if (v.color < 1 || v.color > 3) throw ParseError("vertex color must be 1, 2 or 3");
            g.slot.push_back(cnt[v.color - 1]++);
        }
        return g;
    } catch (const json::exception& e) {
        throw ParseError(std::string("gadget file: ") + e.what());
    }
}

GadgetGraph compile_p3dm(const P3dmInstance& p, long long scale, const GadgetOptions& opt) {
    InducedGraph ig = induced_graph(p);
    RectilinearLayout l = scale_layout(layout_rectilinear(ig), scale);
    return build_gadget(l, p, opt);
}

}  // namespace wb
