#include <algorithm>
#include <deque>
#include <queue>
#include <set>

#include "wb/reduction.hpp"

namespace wb {

using nlohmann::json;

namespace {

constexpr int DX[4] = {1, 0, -1, 0};  // E N W S
constexpr int DY[4] = {0, 1, 0, -1};

GridPoint step(GridPoint p, int d) { return {p.x + DX[d], p.y + DY[d]}; }

int dir_between(GridPoint a, GridPoint b) {
    if (b.x > a.x && b.y == a.y) return 0;
    if (b.y > a.y && b.x == a.x) return 1;
    if (b.x < a.x && b.y == a.y) return 2;
    if (b.y < a.y && b.x == a.x) return 3;
    return -1;
}

// Lattice points of a polyline, endpoints included. Empty on a non-axis segment.
std::vector<GridPoint> rasterize(const std::vector<GridPoint>& poly, std::string* err) {
    std::vector<GridPoint> out;
    if (poly.empty()) return out;
    out.push_back(poly[0]);
    for (std::size_t i = 1; i < poly.size(); ++i) {
        int d = dir_between(poly[i - 1], poly[i]);
        if (d < 0) {
            if (err) *err = poly[i - 1] == poly[i] ? "repeated polyline point" : "segment is not axis-parallel";
            return {};
        }
        GridPoint p = poly[i - 1];
        while (p != poly[i]) {
            p = step(p, d);
            out.push_back(p);
        }
    }
    return out;
}

class Placer {
public:
    explicit Placer(const InducedGraph& g) : g_(g), adj_(g.size()) {
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            adj_[g.edges[e].first].push_back(static_cast<int>(e));
            adj_[g.edges[e].second].push_back(static_cast<int>(e));
        }
        pos_.assign(g.size(), std::nullopt);
        ports_.assign(g.size(), {false, false, false, false});
        paths_.resize(g.edges.size());
    }

    RectilinearLayout run() {
        std::vector<char> done(g_.size(), 0);
        long long xoff = 0;
        for (std::size_t s = 0; s < g_.size(); ++s) {
            if (done[s]) continue;
            std::vector<int> comp = component(static_cast<int>(s));
            for (int v : comp) done[v] = 1;
            occ_.clear();
            place_component(comp);
            long long minx = 0, maxx = 0;
            bool first = true;
            for (const auto& [p, owner] : occ_) {
                if (first || p.x < minx) minx = p.x;
                if (first || p.x > maxx) maxx = p.x;
                first = false;
            }
            long long shift = xoff - minx;
            for (int v : comp) pos_[v]->x += shift;
            for (int v : comp)
                for (int e : adj_[v])
                    if (g_.edges[e].first == v)
                        for (auto& p : paths_[e]) p.x += shift;
            xoff += (maxx - minx) + 2;
        }
        RectilinearLayout l;
        for (std::size_t v = 0; v < g_.size(); ++v) l.vertices[g_.labels[v]] = *pos_[v];
        for (std::size_t e = 0; e < g_.edges.size(); ++e) {
            LayoutEdge le;
            le.from = g_.labels[g_.edges[e].first];
            le.to = g_.labels[g_.edges[e].second];
            const auto& pts = paths_[e];
            for (std::size_t i = 1; i + 1 < pts.size(); ++i)
                if (dir_between(pts[i - 1], pts[i]) != dir_between(pts[i], pts[i + 1])) le.bends.push_back(pts[i]);
            l.edges.push_back(std::move(le));
        }
        return l;
    }

private:
    std::vector<int> component(int s) {
        std::vector<int> out{s};
        std::set<int> seen{s};
        for (std::size_t i = 0; i < out.size(); ++i)
            for (int e : adj_[out[i]]) {
                int w = other(e, out[i]);
                if (seen.insert(w).second) out.push_back(w);
            }
        return out;
    }

    int other(int e, int v) const { return g_.edges[e].first == v ? g_.edges[e].second : g_.edges[e].first; }

    void place_component(const std::vector<int>& comp) {
        int root = comp[0];
        for (int v : comp)
            if (adj_[v].size() > adj_[root].size() || (adj_[v].size() == adj_[root].size() && v < root)) root = v;
        std::vector<int> order{root};
        std::set<int> seen{root};
        for (std::size_t i = 0; i < order.size(); ++i) {
            std::vector<int> nb;
            for (int e : adj_[order[i]]) nb.push_back(other(e, order[i]));
            std::sort(nb.begin(), nb.end());
            for (int w : nb)
                if (seen.insert(w).second) order.push_back(w);
        }
        put(root, {0, 0});
        for (std::size_t i = 1; i < order.size(); ++i)
            if (!place(order[i])) throw InputError("rectilinear layout failed at vertex \"" + g_.labels[order[i]] + "\"");
    }

    void put(int v, GridPoint p) {
        pos_[v] = p;
        occ_[p] = v;
    }

    std::size_t pending(int v) const {
        std::size_t k = 0;
        for (int e : adj_[v])
            if (paths_[e].empty()) ++k;
        return k;
    }

    std::size_t free_ports(int v) const {
        std::size_t k = 0;
        for (int d = 0; d < 4; ++d)
            if (!ports_[v][d] && !occ_.count(step(*pos_[v], d))) ++k;
        return k;
    }

    bool place(int v) {
        std::vector<int> edges;  // edges to placed neighbours
        for (int e : adj_[v])
            if (pos_[other(e, v)]) edges.push_back(e);
        long long x0 = 0, x1 = 0, y0 = 0, y1 = 0;
        bool first = true;
        for (const auto& [p, o] : occ_) {
            if (first || p.x < x0) x0 = p.x;
            if (first || p.x > x1) x1 = p.x;
            if (first || p.y < y0) y0 = p.y;
            if (first || p.y > y1) y1 = p.y;
            first = false;
        }
        struct Cand {
            long long cost;
            GridPoint p;
        };
        std::vector<Cand> cands;
        for (long long x = x0 - 2; x <= x1 + 2; ++x)
            for (long long y = y0 - 2; y <= y1 + 2; ++y) {
                GridPoint p{x, y};
                if (occ_.count(p)) continue;
                long long c = 0;
                for (int e : edges) {
                    GridPoint q = *pos_[other(e, v)];
                    c += std::llabs(q.x - x) + std::llabs(q.y - y);
                }
                if (c < static_cast<long long>(edges.size()) * 1) continue;
                cands.push_back({c, p});
            }
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            if (std::llabs(a.p.y) != std::llabs(b.p.y)) return std::llabs(a.p.y) < std::llabs(b.p.y);
            if (std::llabs(a.p.x) != std::llabs(b.p.x)) return std::llabs(a.p.x) < std::llabs(b.p.x);
            return a.p < b.p;
        });
        std::size_t tries = 0;
        for (const auto& c : cands) {
            if (++tries > 600) break;
            auto occ_save = occ_;
            auto ports_save = ports_;
            put(v, c.p);
            bool ok = true;
            for (int e : edges)
                if (!route(e, x0 - 4, x1 + 4, y0 - 4, y1 + 4)) {
                    ok = false;
                    break;
                }
            if (ok) {
                for (const auto& [p, o] : occ_)
                    if (o >= 0 && pos_[o] && free_ports(o) < pending(o)) {
                        ok = false;
                        break;
                    }
            }
            if (ok) return true;
            occ_ = occ_save;
            ports_ = ports_save;
            for (int e : edges) paths_[e].clear();
            pos_[v].reset();
        }
        return false;
    }

    // Dijkstra over (point, heading); a bend costs 2 extra.
    bool route(int e, long long x0, long long x1, long long y0, long long y1) {
        int a = g_.edges[e].first, b = g_.edges[e].second;
        GridPoint src = *pos_[a], dst = *pos_[b];
        using State = std::pair<GridPoint, int>;
        std::map<State, long long> dist;
        std::map<State, State> parent;
        using QE = std::tuple<long long, long long, GridPoint, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        long long seq = 0;
        auto inside = [&](GridPoint p) { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; };
        std::optional<State> goal;
        for (int d = 0; d < 4 && !goal; ++d) {
            if (ports_[a][d]) continue;
            GridPoint p = step(src, d);
            if (p == dst) {
                if (!ports_[b][(d + 2) % 4]) goal = State{p, d};
                continue;
            }
            if (occ_.count(p) || !inside(p)) continue;
            dist[{p, d}] = 1;
            pq.emplace(1, seq++, p, d);
        }
        while (!pq.empty() && !goal) {
            auto [c, s, p, d] = pq.top();
            pq.pop();
            if (dist[{p, d}] < c) continue;
            for (int nd = 0; nd < 4; ++nd) {
                if (nd == (d + 2) % 4) continue;
                GridPoint np = step(p, nd);
                long long nc = c + 1 + (nd != d ? 2 : 0);
                if (np == dst) {
                    if (!ports_[b][(nd + 2) % 4]) {
                        parent[{np, nd}] = {p, d};
                        goal = State{np, nd};
                        break;
                    }
                    continue;
                }
                if (occ_.count(np) || !inside(np)) continue;
                auto it = dist.find({np, nd});
                if (it != dist.end() && it->second <= nc) continue;
                dist[{np, nd}] = nc;
                parent[{np, nd}] = {p, d};
                pq.emplace(nc, seq++, np, nd);
            }
        }
        if (!goal) return false;
        std::vector<GridPoint> pts{goal->first};
        State cur = *goal;
        int last_dir = cur.second;
        while (parent.count(cur)) {
            cur = parent[cur];
            pts.push_back(cur.first);
        }
        pts.push_back(src);
        std::reverse(pts.begin(), pts.end());
        int first_dir = dir_between(pts[0], pts[1]);
        ports_[a][first_dir] = true;
        ports_[b][(last_dir + 2) % 4] = true;
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) occ_[pts[i]] = -1 - e;
        paths_[e] = pts;
        return true;
    }

    const InducedGraph& g_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::optional<GridPoint>> pos_;
    std::vector<std::array<bool, 4>> ports_;
    std::vector<std::vector<GridPoint>> paths_;
    std::map<GridPoint, int> occ_;
};

}  // namespace

std::vector<GridPoint> edge_polyline(const RectilinearLayout& l, const LayoutEdge& e) {
    std::vector<GridPoint> poly{l.vertices.at(e.from)};
    poly.insert(poly.end(), e.bends.begin(), e.bends.end());
    poly.push_back(l.vertices.at(e.to));
    return poly;
}

Report validate_layout(const RectilinearLayout& l, const InducedGraph* g) {
    Report r;
    std::map<GridPoint, std::string> at;
    for (const auto& [label, p] : l.vertices) {
        auto [it, fresh] = at.emplace(p, label);
        if (!fresh) r.errors.push_back("vertices \"" + it->second + "\" and \"" + label + "\" coincide");
    }
    std::map<GridPoint, std::size_t> used;
    for (std::size_t e = 0; e < l.edges.size(); ++e) {
        const auto& le = l.edges[e];
        if (!l.vertices.count(le.from) || !l.vertices.count(le.to)) {
            r.errors.push_back("edge " + std::to_string(e) + " references an unknown vertex");
            continue;
        }
        std::string err;
        auto pts = rasterize(edge_polyline(l, le), &err);
        if (pts.empty()) {
            r.errors.push_back("edge " + le.from + "-" + le.to + ": " + err);
            continue;
        }
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            if (at.count(pts[i]))
                r.errors.push_back("edge " + le.from + "-" + le.to + " passes through vertex \"" + at[pts[i]] + "\"");
            auto [it, fresh] = used.emplace(pts[i], e);
            if (!fresh) {
                const auto& o = l.edges[it->second];
                r.errors.push_back("edges " + le.from + "-" + le.to + " and " + o.from + "-" + o.to + " touch at (" +
                                   std::to_string(pts[i].x) + "," + std::to_string(pts[i].y) + ")");
            }
        }
    }
    // Two edges may not leave a vertex through the same side.
    std::map<std::pair<std::string, int>, std::size_t> side;
    for (std::size_t e = 0; e < l.edges.size(); ++e) {
        const auto& le = l.edges[e];
        if (!l.vertices.count(le.from) || !l.vertices.count(le.to)) continue;
        auto poly = edge_polyline(l, le);
        if (poly.size() < 2) continue;
        int d0 = dir_between(poly[0], poly[1]);
        int d1 = dir_between(poly.back(), poly[poly.size() - 2]);
        if (d0 < 0 || d1 < 0) continue;
        for (auto key : {std::make_pair(le.from, d0), std::make_pair(le.to, d1)}) {
            auto [it, fresh] = side.emplace(key, e);
            if (!fresh) r.errors.push_back("two edges leave \"" + key.first + "\" on the same side");
        }
    }
    if (g) {
        std::multiset<std::pair<std::string, std::string>> want, have;
        for (const auto& [a, b] : g->edges) want.insert({g->labels[a], g->labels[b]});
        for (const auto& le : l.edges) have.insert({le.from, le.to});
        if (want != have) r.errors.push_back("layout edges differ from the graph edges");
        for (const auto& lab : g->labels)
            if (!l.vertices.count(lab)) r.errors.push_back("vertex \"" + lab + "\" has no position");
    }
    return r;
}

RectilinearLayout layout_rectilinear(const InducedGraph& g) {
    Placer placer(g);
    RectilinearLayout l = placer.run();
    Report r = validate_layout(l, &g);
    if (!r.ok()) throw std::logic_error("layout self-check failed: " + r.str());
    return l;
}

RectilinearLayout scale_layout(const RectilinearLayout& l, long long factor) {
    if (factor < kMinScale)
        throw std::invalid_argument("scale factor " + std::to_string(factor) + " is below the clearance minimum " +
                                    std::to_string(kMinScale));
    RectilinearLayout out = l;
    for (auto& [label, p] : out.vertices) p = {p.x * factor, p.y * factor};
    for (auto& e : out.edges)
        for (auto& b : e.bends) b = {b.x * factor, b.y * factor};
    out.scale = l.scale * factor;
    return out;
}

json layout_to_json(const RectilinearLayout& l) {
    json vs = json::object();
    for (const auto& [label, p] : l.vertices) vs[label] = {p.x, p.y};
    json es = json::array();
    for (const auto& e : l.edges) {
        json bends = json::array();
        for (const auto& b : e.bends) bends.push_back({b.x, b.y});
        es.push_back({{"from", e.from}, {"to", e.to}, {"bends", bends}});
    }
    return {{"vertices", vs}, {"edges", es}, {"scale", l.scale}};
}

RectilinearLayout layout_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw ParseError("layout needs \"vertices\" and \"edges\"");
    RectilinearLayout l;
    auto pt = [](const json& a) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
            throw ParseError("layout coordinates must be integer pairs");
        return GridPoint{a[0].get<long long>(), a[1].get<long long>()};
    };
    for (const auto& [label, p] : j["vertices"].items()) l.vertices[label] = pt(p);
    for (const auto& e : j["edges"]) {
        LayoutEdge le;
        le.from = e.at("from").get<std::string>();
        le.to = e.at("to").get<std::string>();
        if (e.contains("bends"))
            for (const auto& b : e["bends"]) le.bends.push_back(pt(b));
        l.edges.push_back(std::move(le));
    }
    if (j.contains("scale")) l.scale = j["scale"].get<long long>();
    return l;
}

}  // namespace wb
