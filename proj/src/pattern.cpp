#include "wb/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wb {

namespace {

std::string point_name(const GadgetVertex& v) {
    std::string s = "(" + std::to_string(v.p.x) + "," + std::to_string(v.p.y) + ")";
    if (!v.label.empty()) s = v.label + " at " + s;
    return s;
}

}  // namespace

PatternResult detect_alternating(const GadgetGraph& g, const CombinationMeasure& P) {
    const Rational unit(1, static_cast<long>(g.n));
    // slot -> vertex, per color
    std::array<std::vector<int>, 3> vertex_of;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        auto& col = vertex_of[g.vertices[v].color - 1];
        if (col.size() <= static_cast<std::size_t>(g.slot[v])) col.resize(g.slot[v] + 1, -1);
        col[g.slot[v]] = static_cast<int>(v);
    }
    if (P.entries.size() != g.n)
        throw PatternError("measure has " + std::to_string(P.entries.size()) + " entries, expected n = " +
                           std::to_string(g.n));
    std::vector<bool> chosen(g.triangles.size(), false);
    for (std::size_t e = 0; e < P.entries.size(); ++e) {
        const auto& en = P.entries[e];
        if (en.mass != unit)
            throw PatternError("entry " + std::to_string(e) + " has mass " + to_string(en.mass) + ", expected " +
                               to_string(unit));
        if (en.tuple.size() != 3) throw PatternError("entry " + std::to_string(e) + " is not a triple");
        std::array<GPoint, 3> pts;
        for (int c = 0; c < 3; ++c) {
            int s = en.tuple[c];
            if (s < 0 || static_cast<std::size_t>(s) >= vertex_of[c].size() || vertex_of[c][s] < 0)
                throw PatternError("entry " + std::to_string(e) + " references a missing slot");
            pts[c] = g.vertices[vertex_of[c][s]].p;
        }
        int t = g.triangle_at(pts);
        if (t < 0) throw PatternError("entry " + std::to_string(e) + " is not a gadget triangle");
        chosen[t] = true;
    }

    PatternResult res;
    auto fail = [&](std::string why) {
        res.ok = false;
        res.violation = std::move(why);
        return res;
    };
    for (std::size_t t = 0; t < g.triangles.size(); ++t) {
        if (!chosen[t] || g.triangles[t].kind != TriangleKind::OffPath) continue;
        for (int v : g.triangles[t].v)
            if (g.vertices[v].role == VertexRole::Element)
                return fail("off-path triangle selected at element point " + point_name(g.vertices[v]));
        return fail("off-path triangle " + std::to_string(t) + " selected");
    }
    auto& pat = res.pattern;
    for (std::size_t pi = 0; pi < g.paths.size(); ++pi) {
        const auto& tp = g.paths[pi];
        std::vector<bool> bits;
        for (int t : tp.triangles) bits.push_back(chosen[t]);
        for (std::size_t i = 0; i + 1 < bits.size(); ++i)
            if (bits[i] == bits[i + 1])
                return fail("path " + std::to_string(pi) + " breaks alternation at triangles " + std::to_string(i) +
                            " and " + std::to_string(i + 1));
        pat.selection.push_back(std::move(bits));
    }
    std::map<int, int> starts;  // element vertex -> selected first triangles
    for (std::size_t pi = 0; pi < g.paths.size(); ++pi) {
        starts[g.paths[pi].element] += pat.selection[pi].empty() ? 0 : int(pat.selection[pi][0]);
    }
    for (int ev : g.element_vertex) {
        int k = starts[ev];
        if (k != 1)
            return fail("element point " + point_name(g.vertices[ev]) + (k == 0 ? " is uncovered" : " is covered " +
                                                                          std::to_string(k) + " times"));
    }
    for (std::size_t t = 0; t < g.triple_triangle.size(); ++t) {
        bool sel = chosen[g.triple_triangle[t]];
        for (std::size_t pi = 0; pi < g.paths.size(); ++pi) {
            if (g.paths[pi].triple != static_cast<int>(t)) continue;
            if (pat.selection[pi][0] != sel)
                return fail("triple " + triple_label(g.triples[t]) + (sel ? " is selected but path " : " is not selected but path ") +
                            std::to_string(pi) + (sel ? " does not start selected" : " starts selected"));
        }
        if (sel) pat.selected_triples.push_back(t);
    }
    res.ok = true;
    return res;
}

std::vector<std::size_t> decode_matching(const AlternatingPattern& pat, const P3dmInstance& p) {
    std::vector<std::size_t> cover = pat.selected_triples;
    std::sort(cover.begin(), cover.end());
    if (!is_exact_cover(p, cover)) {
        std::map<std::string, int> hits;
        for (auto t : cover)
            if (t < p.triples.size())
                for (const auto& e : p.triples[t]) ++hits[e];
        for (const auto* side : {&p.X, &p.Y, &p.Z})
            for (const auto& e : *side)
                if (hits[e] != 1)
                    throw PatternError("decoded triples are not an exact cover: element " + e + " is contained in " +
                                       std::to_string(hits[e]) + " triples");
        throw PatternError("decoded triples are not an exact cover");
    }
    return cover;
}

TripleScan min_triple_scan(const ProblemInstance& inst, std::uint64_t cap) {
    if (inst.m() != 3) throw std::invalid_argument("min_triple_scan needs exactly three measures");
    Report r = validate_instance(inst);
    if (!r.ok()) throw std::invalid_argument(r.str());
    Integer total = tuple_space_size(inst);
    if (total > Integer(static_cast<unsigned long>(cap)))
        throw CapExceeded(total, "triple scan of " + total.get_str() + " tuples exceeds the cap");
    const auto& M = inst.measures;
    // W[p][a][b] = lambda_i lambda_k |x_a - x_b|^2 for the pair p = (0,1), (0,2), (1,2)
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    std::array<std::vector<std::vector<Rational>>, 3> W;
    Integer den = 1;
    for (int q = 0; q < 3; ++q) {
        auto [i, k] = pairs[q];
        Rational lw = inst.weights[i] * inst.weights[k];
        W[q].assign(M[i].size(), std::vector<Rational>(M[k].size()));
        for (std::size_t a = 0; a < M[i].size(); ++a)
            for (std::size_t b = 0; b < M[k].size(); ++b) {
                Rational s = 0;
                for (std::size_t t = 0; t < inst.d; ++t) s += sq(M[i].points[a].coords[t] - M[k].points[b].coords[t]);
                W[q][a][b] = lw * s;
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), W[q][a][b].get_den_mpz_t());
            }
    }
    // Integer costs over the common denominator; int64 when every entry fits.
    std::array<std::vector<std::vector<Integer>>, 3> Z;
    bool small = true;
    const Integer limit = Integer(1) << 60;
    for (int q = 0; q < 3; ++q) {
        Z[q].resize(W[q].size());
        for (std::size_t a = 0; a < W[q].size(); ++a)
            for (const auto& w : W[q][a]) {
                Integer z = w.get_num() * (den / w.get_den());
                small = small && abs(z) < limit;
                Z[q][a].push_back(z);
            }
    }
    TripleScan out;
    const std::size_t n0 = M[0].size(), n1 = M[1].size(), n2 = M[2].size();
    if (small) {
        std::array<std::vector<std::vector<long long>>, 3> S;
        for (int q = 0; q < 3; ++q) {
            S[q].resize(Z[q].size());
            for (std::size_t a = 0; a < Z[q].size(); ++a)
                for (const auto& z : Z[q][a]) S[q][a].push_back(z.get_si());
        }
        long long best = 0;
        bool have = false;
        for (std::size_t a = 0; a < n0; ++a)
            for (std::size_t b = 0; b < n1; ++b) {
                long long ab = S[0][a][b];
                if (have && ab > best) continue;  // every term is non-negative
                for (std::size_t c = 0; c < n2; ++c) {
                    long long v = ab + S[1][a][c] + S[2][b][c];
                    if (!have || v < best) {
                        best = v;
                        have = true;
                        out.argmin.clear();
                    }
                    if (v == best) out.argmin.push_back({int(a), int(b), int(c)});
                }
            }
        out.min_cost = Rational(Integer(static_cast<long>(best)), den);
    } else {
        Integer best;
        bool have = false;
        for (std::size_t a = 0; a < n0; ++a)
            for (std::size_t b = 0; b < n1; ++b)
                for (std::size_t c = 0; c < n2; ++c) {
                    Integer v = Z[0][a][b] + Z[1][a][c] + Z[2][b][c];
                    if (!have || v < best) {
                        best = v;
                        have = true;
                        out.argmin.clear();
                    }
                    if (v == best) out.argmin.push_back({int(a), int(b), int(c)});
                }
        out.min_cost = Rational(best, den);
    }
    out.min_cost.canonicalize();
    return out;
}

namespace {
std::optional<Rational> exact_sqrt(const Rational& r) {
    if (sgn(r) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return std::nullopt;
    Integer a = sqrt(r.get_num()), b = sqrt(r.get_den());
    Rational out(a, b);
    out.canonicalize();
    return out;
}
}  // namespace

Circumference circumference_cost(const Point& a, const Point& b, const Point& c) {
    if (a.size() != 2 || b.size() != 2 || c.size() != 2)
        throw std::invalid_argument("circumference_cost works on planar points");
    auto dist2 = [](const Point& u, const Point& v) -> Rational { return sq(u[0] - v[0]) + sq(u[1] - v[1]); };
    std::array<Rational, 3> s{dist2(a, b), dist2(b, c), dist2(a, c)};
    Circumference out;
    Rational total = 0;
    bool exact = true;
    for (const auto& x : s) {
        out.approx += std::sqrt(x.get_d());
        if (auto e = exact_sqrt(x))
            total += *e;
        else
            exact = false;
    }
    if (exact) out.exact = total;
    return out;
}

nlohmann::json pattern_to_json(const AlternatingPattern& pat, const GadgetGraph& g) {
    nlohmann::json paths = nlohmann::json::array();
    for (std::size_t pi = 0; pi < pat.selection.size(); ++pi) {
        std::string bits;
        for (bool b : pat.selection[pi]) bits += b ? '1' : '0';
        const auto& tp = g.paths[pi];
        paths.push_back({{"element", g.vertices[tp.element].label},
                         {"triple", triple_label(g.triples[tp.triple])},
                         {"bits", bits}});
    }
    nlohmann::json cover = nlohmann::json::array();
    for (auto t : pat.cover) cover.push_back(g.triples[t]);
    return {{"paths", paths}, {"selected_triples", pat.selected_triples}, {"cover", cover}};
}

}  // namespace wb
