#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <functional>
#include <set>

#include "wb/reduction.hpp"

namespace wb {

using nlohmann::json;

Report validate_p3dm(const P3dmInstance& p) {
    Report r;
    if (p.X.size() != p.Y.size() || p.X.size() != p.Z.size())
        r.errors.push_back("|X|, |Y|, |Z| differ");
    std::set<std::string> all;
    for (const auto* set : {&p.X, &p.Y, &p.Z})
        for (const auto& e : *set)
            if (!all.insert(e).second) r.errors.push_back("label \"" + e + "\" used twice");
    std::set<std::string> xs(p.X.begin(), p.X.end()), ys(p.Y.begin(), p.Y.end()), zs(p.Z.begin(), p.Z.end());
    std::map<std::string, int> deg;
    std::set<std::array<std::string, 3>> seen;
    for (const auto& t : p.triples) {
        if (!xs.count(t[0]) || !ys.count(t[1]) || !zs.count(t[2]))
            r.errors.push_back("triple " + triple_label(t) + " is not in X x Y x Z");
        if (!seen.insert(t).second) r.errors.push_back("triple " + triple_label(t) + " listed twice");
        for (const auto& e : t) ++deg[e];
    }
    for (const auto& [e, d] : deg)
        if (d > 3) r.errors.push_back("element \"" + e + "\" occurs in " + std::to_string(d) + " triples");
    return r;
}

std::string triple_label(const std::array<std::string, 3>& t) { return "(" + t[0] + "," + t[1] + "," + t[2] + ")"; }

json p3dm_to_json(const P3dmInstance& p) {
    json ts = json::array();
    for (const auto& t : p.triples) ts.push_back({t[0], t[1], t[2]});
    return {{"X", p.X}, {"Y", p.Y}, {"Z", p.Z}, {"triples", ts}};
}

P3dmInstance p3dm_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("P3DM file must be a JSON object");
    P3dmInstance p;
    for (const char* key : {"X", "Y", "Z", "triples"})
        if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("P3DM field \"") + key + "\" missing");
    p.X = j["X"].get<std::vector<std::string>>();
    p.Y = j["Y"].get<std::vector<std::string>>();
    p.Z = j["Z"].get<std::vector<std::string>>();
    std::size_t i = 0;
    for (const auto& t : j["triples"]) {
        if (!t.is_array() || t.size() != 3) throw ParseError("triples[" + std::to_string(i) + "] needs 3 labels");
        p.triples.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
        ++i;
    }
    return p;
}

bool is_exact_cover(const P3dmInstance& p, const std::vector<std::size_t>& cover) {
    std::map<std::string, int> hit;
    for (auto t : cover) {
        if (t >= p.triples.size()) return false;
        for (const auto& e : p.triples[t]) ++hit[e];
    }
    for (const auto* set : {&p.X, &p.Y, &p.Z})
        for (const auto& e : *set)
            if (hit[e] != 1) return false;
    return hit.size() == 3 * p.q();
}

P3dmDecision p3dm_decide_bruteforce(const P3dmInstance& p, std::size_t max_q) {
    Report r = validate_p3dm(p);
    if (!r.ok()) throw InputError("invalid P3DM instance: " + r.str());
    if (p.q() > max_q) throw InputError("q = " + std::to_string(p.q()) + " exceeds guard " + std::to_string(max_q));
    std::vector<std::string> elems;
    for (const auto* set : {&p.X, &p.Y, &p.Z}) elems.insert(elems.end(), set->begin(), set->end());
    std::map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < elems.size(); ++i) id[elems[i]] = i;
    std::vector<std::vector<std::size_t>> by_elem(elems.size());
    for (std::size_t t = 0; t < p.triples.size(); ++t)
        for (const auto& e : p.triples[t]) by_elem[id[e]].push_back(t);
    std::vector<char> covered(elems.size(), 0);
    std::vector<std::size_t> chosen;
    std::function<bool()> rec = [&]() -> bool {
        // Branch on the uncovered element with the fewest usable triples.
        int best = -1;
        std::size_t best_cnt = 0;
        for (std::size_t e = 0; e < elems.size(); ++e) {
            if (covered[e]) continue;
            std::size_t cnt = 0;
            for (auto t : by_elem[e]) {
                bool ok = true;
                for (const auto& x : p.triples[t]) ok = ok && !covered[id[x]];
                cnt += ok;
            }
            if (cnt == 0) return false;
            if (best < 0 || cnt < best_cnt) {
                best = static_cast<int>(e);
                best_cnt = cnt;
            }
        }
        if (best < 0) return true;
        for (auto t : by_elem[best]) {
            bool ok = true;
            for (const auto& x : p.triples[t]) ok = ok && !covered[id[x]];
            if (!ok) continue;
            for (const auto& x : p.triples[t]) covered[id[x]] = 1;
            chosen.push_back(t);
            if (rec()) return true;
            chosen.pop_back();
            for (const auto& x : p.triples[t]) covered[id[x]] = 0;
        }
        return false;
    };
    P3dmDecision d;
    d.yes = rec();
    if (d.yes) {
        d.cover = chosen;
        std::sort(d.cover.begin(), d.cover.end());
    }
    return d;
}

bool is_planar(const InducedGraph& g) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    Graph bg(g.size());
    for (const auto& [a, b] : g.edges) boost::add_edge(a, b, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

InducedGraph induced_graph(const P3dmInstance& p) {
    Report r = validate_p3dm(p);
    if (!r.ok()) throw InputError("invalid P3DM instance: " + r.str());
    InducedGraph g;
    std::map<std::string, int> id;
    int c = 1;
    for (const auto* set : {&p.X, &p.Y, &p.Z}) {
        for (const auto& e : *set) {
            id[e] = static_cast<int>(g.labels.size());
            g.labels.push_back(e);
            g.color.push_back(c);
        }
        ++c;
    }
    g.num_elements = g.labels.size();
    for (const auto& t : p.triples) {
        int tv = static_cast<int>(g.labels.size());
        g.labels.push_back(triple_label(t));
        g.color.push_back(0);
        for (const auto& e : t) g.edges.emplace_back(id[e], tv);
    }
    if (!is_planar(g)) throw InputError("induced graph is not planar");
    return g;
}

}  // namespace wb
