#include "wb/measures.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace wb {

using nlohmann::json;

std::string Report::str() const {
    if (errors.empty()) return "valid";
    std::string s;
    for (const auto& e : errors) {
        if (!s.empty()) s += "; ";
        s += e;
    }
    return s;
}

Report validate_measure(const DiscreteMeasure& mu, std::size_t d, const std::string& name) {
    Report r;
    if (mu.points.empty()) r.errors.push_back(name + ": empty support");
    Rational total = 0;
    for (std::size_t k = 0; k < mu.points.size(); ++k) {
        const auto& s = mu.points[k];
        if (s.coords.size() != d)
            r.errors.push_back(name + " slot " + std::to_string(k) + ": dimension " +
                               std::to_string(s.coords.size()) + " != " + std::to_string(d));
        if (s.mass <= 0)
            r.errors.push_back(name + " slot " + std::to_string(k) + ": mass not positive");
        total += s.mass;
    }
    if (total != 1) r.errors.push_back(name + ": mass sum " + to_string(total) + " != 1");
    return r;
}

Report validate_instance(const ProblemInstance& inst) {
    Report r;
    if (inst.d < 1) r.errors.push_back("dimension d must be >= 1");
    if (inst.measures.empty()) r.errors.push_back("no measures");
    if (inst.weights.size() != inst.measures.size())
        r.errors.push_back("weights length " + std::to_string(inst.weights.size()) +
                           " != number of measures " + std::to_string(inst.measures.size()));
    Rational wsum = 0;
    for (std::size_t i = 0; i < inst.weights.size(); ++i) {
        if (inst.weights[i] <= 0) r.errors.push_back("weight " + std::to_string(i) + " not positive");
        wsum += inst.weights[i];
    }
    if (wsum != 1) r.errors.push_back("weights sum " + to_string(wsum) + " != 1");
    for (std::size_t i = 0; i < inst.measures.size(); ++i) {
        auto sub = validate_measure(inst.measures[i], inst.d, "measure " + std::to_string(i));
        r.errors.insert(r.errors.end(), sub.errors.begin(), sub.errors.end());
    }
    return r;
}

Report validate_combination(const CombinationMeasure& P, const ProblemInstance& inst) {
    Report r;
    const std::size_t m = inst.m();
    std::vector<std::vector<Rational>> got(m);
    for (std::size_t i = 0; i < m; ++i) got[i].assign(inst.measures[i].size(), Rational(0));
    std::set<Tuple> seen;
    Rational total = 0;
    for (std::size_t e = 0; e < P.entries.size(); ++e) {
        const auto& en = P.entries[e];
        if (en.tuple.size() != m) {
            r.errors.push_back("entry " + std::to_string(e) + ": tuple length != m");
            continue;
        }
        if (en.mass <= 0) r.errors.push_back("entry " + std::to_string(e) + ": mass not positive");
        if (!seen.insert(en.tuple).second)
            r.errors.push_back("entry " + std::to_string(e) + ": duplicate tuple");
        bool in_range = true;
        for (std::size_t i = 0; i < m; ++i)
            if (en.tuple[i] < 0 || en.tuple[i] >= static_cast<int>(inst.measures[i].size())) {
                r.errors.push_back("entry " + std::to_string(e) + ": index out of range for measure " +
                                   std::to_string(i));
                in_range = false;
            }
        if (!in_range) continue;
        for (std::size_t i = 0; i < m; ++i) got[i][en.tuple[i]] += en.mass;
        total += en.mass;
    }
    if (total != 1) r.errors.push_back("mass sum " + to_string(total) + " != 1");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < got[i].size(); ++k)
            if (got[i][k] != inst.measures[i].points[k].mass)
                r.errors.push_back("marginal violated at (i=" + std::to_string(i) + ",k=" +
                                   std::to_string(k) + "): " + to_string(got[i][k]) +
                                   " != " + to_string(inst.measures[i].points[k].mass));
    return r;
}

Report validate_plan(const TransportPlan& plan, const DiscreteMeasure& P, const ProblemInstance& inst) {
    Report r;
    const std::size_t m = inst.m();
    std::vector<std::vector<Rational>> out(P.size(), std::vector<Rational>(m));
    std::vector<std::vector<Rational>> in(m);
    for (std::size_t i = 0; i < m; ++i) in[i].assign(inst.measures[i].size(), Rational(0));
    for (std::size_t f = 0; f < plan.flows.size(); ++f) {
        const auto& fl = plan.flows[f];
        if (fl.j < 0 || fl.j >= static_cast<int>(P.size()) || fl.i < 0 ||
            fl.i >= static_cast<int>(m) || fl.k < 0 ||
            fl.k >= static_cast<int>(inst.measures[fl.i].size())) {
            r.errors.push_back("flow " + std::to_string(f) + ": index out of range");
            continue;
        }
        if (fl.mass <= 0) r.errors.push_back("flow " + std::to_string(f) + ": mass not positive");
        out[fl.j][fl.i] += fl.mass;
        in[fl.i][fl.k] += fl.mass;
    }
    for (std::size_t j = 0; j < P.size(); ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (out[j][i] != P.points[j].mass)
                r.errors.push_back("candidate slot " + std::to_string(j) + " sends " + to_string(out[j][i]) +
                                   " to measure " + std::to_string(i) + ", expected " +
                                   to_string(P.points[j].mass));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < in[i].size(); ++k)
            if (in[i][k] != inst.measures[i].points[k].mass)
                r.errors.push_back("input slot (i=" + std::to_string(i) + ",k=" + std::to_string(k) +
                                   ") receives " + to_string(in[i][k]));
    return r;
}

Point weighted_mean(const Tuple& t, const ProblemInstance& inst) {
    if (t.size() != inst.m()) throw std::out_of_range("tuple length != m");
    Point x(inst.d, Rational(0));
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0 || t[i] >= static_cast<int>(inst.measures[i].size()))
            throw std::out_of_range("tuple index out of range for measure " + std::to_string(i));
        const auto& p = inst.measures[i].points[t[i]].coords;
        for (std::size_t c = 0; c < inst.d; ++c) x[c] += inst.weights[i] * p[c];
    }
    return x;
}

Integer tuple_space_size(const ProblemInstance& inst) {
    Integer s = 1;
    for (const auto& mu : inst.measures) s *= static_cast<unsigned long>(mu.size());
    return s;
}

void for_each_tuple(const ProblemInstance& inst, std::uint64_t cap,
                    const std::function<void(const Tuple&)>& fn) {
    Integer total = tuple_space_size(inst);
    if (total > Integer(std::to_string(cap)))
        throw CapExceeded(total, "tuple enumeration needs " + total.get_str() +
                                     " tuples, cap is " + std::to_string(cap));
    const std::size_t m = inst.m();
    if (m == 0) return;
    for (const auto& mu : inst.measures)
        if (mu.size() == 0) return;
    Tuple t(m, 0);
    while (true) {
        fn(t);
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (++t[i] < static_cast<int>(inst.measures[i].size())) break;
            t[i] = 0;
            if (i == 0) return;
        }
    }
}

std::vector<Tuple> enumerate_tuples(const ProblemInstance& inst, std::uint64_t cap) {
    std::vector<Tuple> out;
    for_each_tuple(inst, cap, [&](const Tuple& t) { out.push_back(t); });
    return out;
}

ProblemInstance gen_square_example(const Rational& side, const Rational& d) {
    if (side <= 0) throw std::invalid_argument("side must be positive");
    if (d <= 0 || d > Rational(1, 2)) throw std::invalid_argument("corner mass must lie in (0, 1/2]");
    ProblemInstance inst;
    inst.d = 2;
    inst.weights = {Rational(1, 2), Rational(1, 2)};
    DiscreteMeasure p1, p2;
    p1.points = {{{0, 0}, d}, {{side, side}, d}};
    p2.points = {{{side, 0}, d}, {{0, side}, d}};
    if (d < Rational(1, 2)) {
        // The leftover mass sits at one shared far point, so it pairs with
        // itself at zero cost and never interacts with the square.
        Rational far = -10 * side;
        p1.points.push_back({{far, far}, 1 - 2 * d});
        p2.points.push_back({{far, far}, 1 - 2 * d});
    }
    inst.measures = {p1, p2};
    return inst;
}

ProblemInstance gen_random(const std::vector<int>& n_i, std::size_t d, int coord_bound,
                           std::uint64_t seed) {
    if (coord_bound < 0) throw std::invalid_argument("coord_bound must be >= 0");
    std::mt19937_64 rng(seed);
    ProblemInstance inst;
    inst.d = d;
    const auto range = static_cast<std::uint64_t>(coord_bound) + 1;
    for (int n : n_i) {
        if (n < 1) throw std::invalid_argument("every measure needs at least one slot");
        DiscreteMeasure mu;
        for (int k = 0; k < n; ++k) {
            Point p(d);
            for (auto& c : p) c = static_cast<long>(rng() % range);
            mu.points.push_back({p, Rational(1, n)});
        }
        inst.measures.push_back(std::move(mu));
    }
    for (std::size_t i = 0; i < n_i.size(); ++i)
        inst.weights.emplace_back(1, static_cast<long>(n_i.size()));
    return inst;
}

ProblemInstance normalize(const ProblemInstance& inst) {
    ProblemInstance out = inst;
    for (auto& mu : out.measures) {
        std::map<Point, Rational> merged;
        std::vector<Point> order;
        for (const auto& s : mu.points) {
            auto [it, fresh] = merged.try_emplace(s.coords, 0);
            if (fresh) order.push_back(s.coords);
            it->second += s.mass;
        }
        mu.points.clear();
        for (const auto& p : order) mu.points.push_back({p, merged[p]});
    }
    return out;
}

// ---- JSON ----

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    throw ParseError("expected rational string, got " + j.dump());
}

json point_to_json(const Point& p) {
    json a = json::array();
    for (const auto& c : p) a.push_back(to_string(c));
    return a;
}

Point point_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("coords must be an array");
    Point p;
    for (const auto& c : j) p.push_back(rational_from_json(c));
    return p;
}

json measure_to_json(const DiscreteMeasure& mu) {
    json pts = json::array();
    for (const auto& s : mu.points)
        pts.push_back({{"mass", to_string(s.mass)}, {"coords", point_to_json(s.coords)}});
    return {{"points", pts}};
}

DiscreteMeasure measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw ParseError("measure needs a \"points\" array");
    DiscreteMeasure mu;
    std::size_t k = 0;
    for (const auto& s : j["points"]) {
        if (!s.contains("mass") || !s.contains("coords"))
            throw ParseError("point " + std::to_string(k) + " needs \"mass\" and \"coords\"");
        mu.points.push_back({point_from_json(s["coords"]), rational_from_json(s["mass"])});
        ++k;
    }
    return mu;
}

json instance_to_json(const ProblemInstance& inst) {
    json ws = json::array();
    for (const auto& w : inst.weights) ws.push_back(to_string(w));
    json ms = json::array();
    for (const auto& mu : inst.measures) ms.push_back(measure_to_json(mu));
    return {{"d", inst.d}, {"weights", ws}, {"measures", ms}};
}

ProblemInstance instance_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    for (const char* key : {"d", "weights", "measures"})
        if (!j.contains(key)) throw ParseError(std::string("instance missing field \"") + key + "\"");
    if (!j["d"].is_number_integer() || j["d"].get<long long>() < 1)
        throw ParseError("field \"d\" must be a positive integer");
    ProblemInstance inst;
    inst.d = j["d"].get<std::size_t>();
    for (const auto& w : j["weights"]) inst.weights.push_back(rational_from_json(w));
    std::size_t i = 0;
    for (const auto& mu : j["measures"]) {
        try {
            inst.measures.push_back(measure_from_json(mu));
        } catch (const ParseError& e) {
            throw ParseError("measures[" + std::to_string(i) + "]: " + e.what());
        }
        ++i;
    }
    return inst;
}

json combination_to_json(const CombinationMeasure& P) {
    json es = json::array();
    for (const auto& e : P.entries) es.push_back({{"tuple", e.tuple}, {"mass", to_string(e.mass)}});
    return {{"entries", es}};
}

CombinationMeasure combination_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw ParseError("combination measure needs an \"entries\" array");
    CombinationMeasure P;
    std::size_t e = 0;
    for (const auto& en : j["entries"]) {
        if (!en.contains("tuple") || !en.contains("mass") || !en["tuple"].is_array())
            throw ParseError("entries[" + std::to_string(e) + "] needs \"tuple\" and \"mass\"");
        CombinationEntry ce;
        for (const auto& v : en["tuple"]) {
            if (!v.is_number_integer()) throw ParseError("entries[" + std::to_string(e) + "]: non-integer index");
            ce.tuple.push_back(v.get<int>());
        }
        ce.mass = rational_from_json(en["mass"]);
        P.entries.push_back(std::move(ce));
        ++e;
    }
    return P;
}

json plan_to_json(const TransportPlan& plan) {
    json fs = json::array();
    for (const auto& f : plan.flows)
        fs.push_back({{"j", f.j}, {"i", f.i}, {"k", f.k}, {"mass", to_string(f.mass)}});
    return {{"flows", fs}};
}

TransportPlan plan_from_json(const json& j) {
    if (!j.is_object() || !j.contains("flows") || !j["flows"].is_array())
        throw ParseError("transport plan needs a \"flows\" array");
    TransportPlan plan;
    std::size_t f = 0;
    for (const auto& fl : j["flows"]) {
        for (const char* key : {"j", "i", "k", "mass"})
            if (!fl.contains(key))
                throw ParseError("flows[" + std::to_string(f) + "] missing \"" + key + "\"");
        plan.flows.push_back({fl["j"].get<int>(), fl["i"].get<int>(), fl["k"].get<int>(),
                              rational_from_json(fl["mass"])});
        ++f;
    }
    return plan;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << text;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("rename failed for " + path);
}

}  // namespace wb
