// JSON strings cross the boundary in both directions; the Python package turns them
// into dicts and Fractions.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wb/barycenter.hpp"
#include "wb/cost.hpp"
#include "wb/pattern.hpp"
#include "wb/plot.hpp"
#include "wb/reduction.hpp"
#include "wb/verify.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace wb;

namespace {

json parse(const std::string& s) { return json::parse(s); }

std::string solve(const std::string& inst_s, const std::string& method, std::uint64_t cap) {
    auto inst = instance_from_json(parse(inst_s));
    std::string used = method;
    if (used == "auto") used = inst.d == 1 ? "1d" : inst.m() == 2 ? "2m" : "lp";
    BarycenterResult r;
    {
        py::gil_scoped_release nogil;
        if (used == "1d") r = solve_1d(inst);
        else if (used == "2m") r = solve_2measures(inst);
        else if (used == "lp") r = solve_exact(inst, cap);
        else throw std::invalid_argument("unknown method \"" + method + "\"");
    }
    json out;
    out["value"] = to_string(r.value);
    out["support_size"] = r.support_size;
    out["method"] = used;
    out["measure"] = combination_to_json(r.measure);
    return out.dump();
}

std::string verify(const std::string& inst_s, const std::string& cert_s, std::size_t N, const std::string& phi) {
    auto inst = instance_from_json(parse(inst_s));
    auto P = combination_from_json(parse(cert_s));
    return verify_scmp_certificate(P, inst, N, parse_rational(phi)).to_json().dump();
}

std::string plan(const std::string& inst_s, const std::string& support_s) {
    auto inst = instance_from_json(parse(inst_s));
    auto P = measure_from_json(parse(support_s));
    auto pr = optimal_plan_for_support(P, inst);
    json out;
    out["value"] = to_string(pr.value);
    out["plan"] = plan_to_json(pr.plan);
    out["non_mass_splitting"] = is_non_mass_splitting(pr.plan).ok;
    return out.dump();
}

std::string reduce(const std::string& p_s, long long scale) {
    auto p = p3dm_from_json(parse(p_s));
    GadgetGraph g;
    {
        py::gil_scoped_release nogil;
        g = compile_p3dm(p, scale);
    }
    json out;
    out["n"] = g.n;
    out["gadget"] = gadget_to_json(g);
    out["instance"] = instance_to_json(emit_uc3p(g));
    return out.dump();
}

std::string decide(const std::string& inst_s, std::size_t N, const std::string& phi, const std::string& method,
                   std::uint64_t cap) {
    auto inst = instance_from_json(parse(inst_s));
    auto bound = parse_rational(phi);
    Decision d;
    {
        py::gil_scoped_release nogil;
        if (method == "uc3p") d = uc3p_bruteforce(inst, bound);
        else if (method == "scmp") d = decide_scmp(inst, N, bound, cap);
        else throw std::invalid_argument("unknown method \"" + method + "\"");
    }
    json out;
    out["yes"] = d.yes;
    out["note"] = d.note;
    out["witness"] = d.witness ? combination_to_json(*d.witness) : json(nullptr);
    return out.dump();
}

std::string decode(const std::string& g_s, const std::string& cert_s) {
    auto g = gadget_from_json(parse(g_s));
    auto P = combination_from_json(parse(cert_s));
    json out;
    PatternResult pr;
    try {
        pr = detect_alternating(g, P);
        if (!pr.ok) throw PatternError(pr.violation);
        P3dmInstance p;
        const std::size_t q = g.element_labels.size() / 3;
        for (std::size_t i = 0; i < q; ++i) {
            p.X.push_back(g.element_labels[i]);
            p.Y.push_back(g.element_labels[q + i]);
            p.Z.push_back(g.element_labels[2 * q + i]);
        }
        p.triples = g.triples;
        pr.pattern.cover = decode_matching(pr.pattern, p);
    } catch (const PatternError& e) {
        out["ok"] = false;
        out["reason"] = e.what();
        return out.dump();
    }
    out["ok"] = true;
    out["pattern"] = pattern_to_json(pr.pattern, g);
    return out.dump();
}

std::string plot(const std::string& input_s, const std::optional<std::string>& measure_s) {
    auto j = parse(input_s);
    std::optional<CombinationMeasure> P;
    if (measure_s) P = combination_from_json(parse(*measure_s));
    const CombinationMeasure* ptr = P ? &*P : nullptr;
    if (j.contains("triangles")) return plot_svg(gadget_from_json(j), ptr);
    return plot_svg(instance_from_json(j), ptr);
}

}  // namespace

PYBIND11_MODULE(_wbary, m) {
    m.doc() = "Exact fixed-support Wasserstein barycenters and the P3DM reduction";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);
    py::register_exception<RoutingError>(m, "RoutingError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.attr("DEFAULT_CAP") = kDefaultCap;
    m.attr("DEFAULT_SCALE") = kDefaultScale;
    m.attr("MIN_SCALE") = kMinScale;

    m.def("solve", &solve, py::arg("instance"), py::arg("method") = "auto", py::arg("cap") = kDefaultCap);
    m.def("verify", &verify, py::arg("instance"), py::arg("certificate"), py::arg("N"), py::arg("phi"));
    m.def("plan", &plan, py::arg("instance"), py::arg("support"));
    m.def("reduce", &reduce, py::arg("p3dm"), py::arg("scale") = kDefaultScale);
    m.def("decide", &decide, py::arg("instance"), py::arg("N"), py::arg("phi"), py::arg("method") = "scmp",
          py::arg("cap") = kDefaultCap);
    m.def("decode", &decode, py::arg("gadget"), py::arg("certificate"));
    m.def("plot", &plot, py::arg("input"), py::arg("measure") = py::none());
    m.def("gen_square", [](const std::string& side, const std::string& d) {
        return instance_to_json(gen_square_example(parse_rational(side), parse_rational(d))).dump();
    }, py::arg("side"), py::arg("d") = "1/2");
    m.def("gen_random", [](const std::vector<int>& sizes, std::size_t dim, int bound, std::uint64_t seed) {
        return instance_to_json(gen_random(sizes, dim, bound, seed)).dump();
    }, py::arg("sizes"), py::arg("dim"), py::arg("bound"), py::arg("seed"));
    m.def("tuple_cost", [](const std::string& inst_s, const Tuple& t) {
        auto inst = instance_from_json(parse(inst_s));
        return to_string(tuple_cost_pairwise(t, inst));
    }, py::arg("instance"), py::arg("tuple"));
}
