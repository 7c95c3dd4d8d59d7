// Command-line front end. Every subcommand is a thin wrapper over library calls.
//
// Exit codes: 0 success / accept / yes, 1 reject / no / cross-check mismatch,
// 2 malformed input or usage error.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wb/barycenter.hpp"
#include "wb/cost.hpp"
#include "wb/pattern.hpp"
#include "wb/plot.hpp"
#include "wb/reduction.hpp"
#include "wb/verify.hpp"

using namespace wb;

namespace {

struct Malformed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_cap() {
    if (const char* s = std::getenv("WBARY_CAP")) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(s, &used);
            if (used == std::string(s).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
        throw Malformed(std::string("WBARY_CAP must be a positive integer, got \"") + s + "\"");
    }
    return kDefaultCap;
}

// Loaders attach the file name to whatever the parser complains about.
template <class F>
auto load(const std::string& path, const char* what, F&& conv) {
    try {
        return conv(read_json_file(path));
    } catch (const ParseError& e) {
        std::string msg = e.what();
        throw Malformed(msg.rfind(path, 0) == 0 ? msg : path + ": " + msg);
    } catch (const nlohmann::json::exception& e) {
        throw Malformed(path + ": not a valid " + std::string(what) + " file: " + e.what());
    } catch (const std::invalid_argument& e) {
        throw Malformed(path + ": " + e.what());
    } catch (const InputError& e) {
        throw Malformed(path + ": " + e.what());
    }
}

ProblemInstance load_instance(const std::string& path) {
    auto inst = load(path, "instance", [](const nlohmann::json& j) { return instance_from_json(j); });
    auto rep = validate_instance(inst);
    if (!rep.ok()) throw Malformed(path + ": " + rep.str());
    return inst;
}

CombinationMeasure load_combination(const std::string& path) {
    return load(path, "combination measure", [](const nlohmann::json& j) { return combination_from_json(j); });
}

Rational parse_param(const std::string& name, const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception& e) {
        throw Malformed("--" + name + ": " + e.what());
    }
}

void emit(const std::optional<std::string>& path, const std::string& text) {
    if (path)
        write_text_atomic(*path, text);
    else
        std::cout << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string input;
    std::optional<std::string> out;
    std::string method = "auto";
    bool check = false;
    std::optional<std::uint64_t> cap;
};

int cmd_solve(const SolveArgs& a) {
    auto inst = load_instance(a.input);
    const auto cap = a.cap.value_or(default_cap());
    std::string used = a.method;
    if (used == "auto") used = inst.d == 1 ? "1d" : inst.m() == 2 ? "2m" : "lp";
    BarycenterResult res = used == "1d" ? solve_1d(inst) : used == "2m" ? solve_2measures(inst) : solve_exact(inst, cap);
    std::cout << "value " << to_string(res.value) << "\n";
    std::cout << "support " << res.support_size << "\n";
    std::cout << "method " << used << "\n";
    int rc = 0;
    if (a.check && used != "lp") {
        auto ref = solve_exact(inst, cap);
        bool same = ref.value == res.value;
        std::cout << "check " << (same ? "ok" : "MISMATCH") << " lp " << to_string(ref.value) << "\n";
        if (!same) rc = 1;
    }
    if (a.out) write_text_atomic(*a.out, dump(combination_to_json(res.measure)));
    return rc;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& inst_path, const std::string& cert_path, const std::string& N,
               const std::string& phi, const std::optional<std::string>& out) {
    auto inst = load_instance(inst_path);
    auto P = load_combination(cert_path);
    std::size_t n_bound = 0;
    try {
        std::size_t used = 0;
        n_bound = std::stoul(N, &used);
        if (used != N.size()) throw std::invalid_argument(N);
    } catch (const std::exception&) {
        throw Malformed("--N must be a nonnegative integer, got \"" + N + "\"");
    }
    auto rep = verify_scmp_certificate(P, inst, n_bound, parse_param("phi", phi));
    emit(out, dump(rep.to_json()));
    if (out) std::cout << (rep.accepted() ? "accept" : "reject") << "\n";
    return rep.accepted() ? 0 : 1;
}

// ---------------------------------------------------------------- plan

int cmd_plan(const std::string& inst_path, const std::string& support_path, const std::optional<std::string>& out) {
    auto inst = load_instance(inst_path);
    auto P = load(support_path, "measure", [](const nlohmann::json& j) { return measure_from_json(j); });
    auto rep = validate_measure(P, inst.d, support_path);
    if (!rep.ok()) throw Malformed(rep.str());
    auto res = optimal_plan_for_support(P, inst);
    auto split = is_non_mass_splitting(res.plan);
    std::cout << "value " << to_string(res.value) << "\n";
    std::cout << "non_mass_splitting " << (split.ok ? "true" : "false") << "\n";
    if (out) write_text_atomic(*out, dump(plan_to_json(res.plan)));
    return 0;
}

// ---------------------------------------------------------------- reduce

int cmd_reduce(const std::string& p3dm_path, const std::optional<std::string>& layout_path, long long scale,
               const std::string& out, const std::optional<std::string>& gadget_out) {
    auto p = load(p3dm_path, "P3DM", [](const nlohmann::json& j) { return p3dm_from_json(j); });
    auto rep = validate_p3dm(p);
    if (!rep.ok()) throw Malformed(p3dm_path + ": " + rep.str());
    GadgetGraph g;
    try {
        if (layout_path) {
            auto l = load(*layout_path, "layout", [](const nlohmann::json& j) { return layout_from_json(j); });
            auto ig = induced_graph(p);
            auto lrep = validate_layout(l, &ig);
            if (!lrep.ok()) throw Malformed(*layout_path + ": " + lrep.str());
            g = build_gadget(scale_layout(l, scale), p);
        } else {
            g = compile_p3dm(p, scale);
        }
    } catch (const InputError& e) {
        throw Malformed(e.what());
    }
    auto inst = emit_uc3p(g);
    write_text_atomic(out, dump(instance_to_json(inst)));
    if (gadget_out) write_text_atomic(*gadget_out, dump(gadget_to_json(g)));
    std::cout << "n " << g.n << "\n";
    std::cout << "triangles " << g.triangles.size() << "\n";
    return 0;
}

// ---------------------------------------------------------------- decode

P3dmInstance p3dm_of(const GadgetGraph& g) {
    P3dmInstance p;
    const std::size_t q = g.element_labels.size() / 3;
    for (std::size_t i = 0; i < q; ++i) {
        p.X.push_back(g.element_labels[i]);
        p.Y.push_back(g.element_labels[q + i]);
        p.Z.push_back(g.element_labels[2 * q + i]);
    }
    p.triples = g.triples;
    return p;
}

int cmd_decode(const std::string& gadget_path, const std::string& cert_path, const std::optional<std::string>& out) {
    auto g = load(gadget_path, "gadget", [](const nlohmann::json& j) { return gadget_from_json(j); });
    auto P = load_combination(cert_path);
    PatternResult pr;
    try {
        pr = detect_alternating(g, P);
    } catch (const PatternError& e) {
        std::cout << "reject " << e.what() << "\n";
        return 1;
    }
    if (!pr.ok) {
        std::cout << "reject " << pr.violation << "\n";
        return 1;
    }
    auto p = p3dm_of(g);
    try {
        pr.pattern.cover = decode_matching(pr.pattern, p);
    } catch (const PatternError& e) {
        std::cout << "reject " << e.what() << "\n";
        return 1;
    }
    if (out) write_text_atomic(*out, dump(pattern_to_json(pr.pattern, g)));
    for (auto t : pr.pattern.cover) std::cout << triple_label(p.triples[t]) << "\n";
    return 0;
}

// ---------------------------------------------------------------- decide

bool uc3p_shaped(const ProblemInstance& inst) {
    if (inst.m() != 3 || inst.d != 2) return false;
    const std::size_t n = inst.measures[0].size();
    for (std::size_t i = 0; i < 3; ++i) {
        if (inst.weights[i] != Rational(1, 3) || inst.measures[i].size() != n) return false;
        for (const auto& s : inst.measures[i].points)
            if (s.mass != Rational(1, static_cast<long>(n))) return false;
    }
    return true;
}

int cmd_decide(const std::string& inst_path, const std::string& phi_s, const std::optional<std::string>& n_bound,
               const std::string& method, std::optional<std::uint64_t> cap, const std::optional<std::string>& out) {
    auto inst = load_instance(inst_path);
    Rational phi = parse_param("phi", phi_s);
    std::size_t maxsize = 0;
    for (const auto& mu : inst.measures) maxsize = std::max(maxsize, mu.size());
    // "n" names the common support size of a UC3P instance.
    std::size_t N = sparsity_bound(inst);
    if (n_bound) {
        if (*n_bound == "n") {
            N = maxsize;
        } else {
            try {
                std::size_t used = 0;
                N = std::stoul(*n_bound, &used);
                if (used != n_bound->size()) throw std::invalid_argument(*n_bound);
            } catch (const std::exception&) {
                throw Malformed("--n-bound must be an integer or \"n\", got \"" + *n_bound + "\"");
            }
        }
    }
    std::string used = method;
    if (used == "auto") used = uc3p_shaped(inst) && N == maxsize ? "uc3p" : "scmp";
    if (used == "uc3p" && !uc3p_shaped(inst))
        throw Malformed("uc3p needs three uniform measures of equal size in the plane with weights 1/3");
    if (used == "uc3p" && N != maxsize)
        throw Malformed("uc3p decides the case N = n = " + std::to_string(maxsize) + " only");
    Decision dec;
    try {
        dec = used == "uc3p" ? uc3p_bruteforce(inst, phi) : decide_scmp(inst, N, phi, cap.value_or(default_cap()));
    } catch (const std::invalid_argument& e) {
        throw Malformed(e.what());
    }
    std::cout << (dec.yes ? "yes" : "no") << "\n";
    std::cout << "method " << used << " N " << N << " phi " << to_string(phi) << "\n";
    if (!dec.note.empty()) std::cout << "note " << dec.note << "\n";
    if (out && dec.witness) write_text_atomic(*out, dump(combination_to_json(*dec.witness)));
    return dec.yes ? 0 : 1;
}

// ---------------------------------------------------------------- gen / plot

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Malformed("--sizes expects positive integers separated by commas, got \"" + s + "\"");
        }
    }
    if (out.empty()) throw Malformed("--sizes is empty");
    return out;
}

int cmd_plot(const std::string& input, const std::optional<std::string>& measure, const std::string& out) {
    auto j = load(input, "plot input", [](const nlohmann::json& x) { return x; });
    std::optional<CombinationMeasure> P;
    if (measure) P = load_combination(*measure);
    std::string svg;
    try {
        if (j.is_object() && j.contains("triangles")) {
            auto g = load(input, "gadget", [](const nlohmann::json& x) { return gadget_from_json(x); });
            svg = plot_svg(g, P ? &*P : nullptr);
        } else {
            auto inst = load_instance(input);
            svg = plot_svg(inst, P ? &*P : nullptr);
        }
    } catch (const std::invalid_argument& e) {
        throw Malformed(e.what());
    }
    write_text_atomic(out, svg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact discrete Wasserstein barycenters and the UC3P hardness gadget"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Exact barycenter of an instance");
    solve->add_option("instance", sa.input, "Instance JSON")->required();
    solve->add_option("-o,--out", sa.out, "Write the combination measure here");
    solve->add_option("--method", sa.method, "auto, lp, 1d or 2m")
        ->check(CLI::IsMember({"auto", "lp", "1d", "2m"}));
    solve->add_flag("--check", sa.check, "Cross-check a special-case solver against the LP");
    solve->add_option("--cap", sa.cap, "Tuple enumeration cap (default from WBARY_CAP or 2000000)");

    std::string v_inst, v_cert, v_N, v_phi;
    std::optional<std::string> v_out;
    auto* verify = app.add_subcommand("verify", "Check an SCMP certificate");
    verify->add_option("instance", v_inst, "Instance JSON")->required();
    verify->add_option("certificate", v_cert, "Combination measure JSON")->required();
    verify->add_option("--N", v_N, "Support bound")->required();
    verify->add_option("--phi", v_phi, "Cost bound as p/q")->required();
    verify->add_option("-o,--out", v_out, "Write the JSON report here instead of stdout");

    std::string p_inst, p_sup;
    std::optional<std::string> p_out;
    auto* plan = app.add_subcommand("plan", "Optimal transport plan for a fixed support");
    plan->add_option("instance", p_inst, "Instance JSON")->required();
    plan->add_option("support", p_sup, "Measure JSON with the candidate support")->required();
    plan->add_option("-o,--out", p_out, "Write the plan here");

    std::string r_in, r_out;
    std::optional<std::string> r_layout, r_gadget;
    long long r_scale = kDefaultScale;
    auto* reduce = app.add_subcommand("reduce", "Compile a P3DM instance into a UC3P instance");
    reduce->add_option("p3dm", r_in, "P3DM JSON")->required();
    reduce->add_option("-o,--out", r_out, "UC3P instance JSON")->required();
    reduce->add_option("--gadget", r_gadget, "Also write the gadget graph");
    reduce->add_option("--layout", r_layout, "Use this rectilinear layout instead of computing one");
    reduce->add_option("--scale", r_scale, "Layout scale factor")->check(CLI::Range(kMinScale, 1000LL));

    std::string d_gadget, d_cert;
    std::optional<std::string> d_out;
    auto* decode = app.add_subcommand("decode", "Read the matching off an accepted gadget certificate");
    decode->add_option("gadget", d_gadget, "Gadget JSON")->required();
    decode->add_option("certificate", d_cert, "Combination measure JSON")->required();
    decode->add_option("-o,--out", d_out, "Write the pattern report here");

    std::string dc_inst, dc_phi, dc_method = "auto";
    std::optional<std::string> dc_n, dc_out;
    std::optional<std::uint64_t> dc_cap;
    auto* decide = app.add_subcommand("decide", "Decide SCMP (or UC3P) at the given bounds");
    decide->add_option("instance", dc_inst, "Instance JSON")->required();
    decide->add_option("--phi", dc_phi, "Cost bound as p/q")->required();
    decide->add_option("--n-bound", dc_n, "Support bound N, or \"n\" for the input support size");
    decide->add_option("--method", dc_method, "auto, scmp or uc3p")->check(CLI::IsMember({"auto", "scmp", "uc3p"}));
    decide->add_option("--cap", dc_cap, "Tuple enumeration cap");
    decide->add_option("-o,--out", dc_out, "Write the witness here when the answer is yes");

    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    std::string g_side = "6", g_d = "1/2";
    std::optional<std::string> g_out;
    auto* square = gen->add_subcommand("square", "Two measures on the corners of a square");
    square->add_option("--side", g_side, "Side length as p/q");
    square->add_option("--d", g_d, "Position of the far point as p/q");
    square->add_option("-o,--out", g_out, "Output file (stdout if omitted)");
    std::string g_sizes = "2,2,2";
    std::size_t g_dim = 2;
    int g_bound = 10;
    std::uint64_t g_seed = 1;
    auto* random = gen->add_subcommand("random", "Random instance with integer coordinates");
    random->add_option("--sizes", g_sizes, "Support sizes, comma separated");
    random->add_option("--dim", g_dim, "Dimension")->check(CLI::Range(std::size_t{1}, std::size_t{16}));
    random->add_option("--bound", g_bound, "Coordinates lie in [0, bound]")->check(CLI::NonNegativeNumber);
    random->add_option("--seed", g_seed, "Seed");
    random->add_option("-o,--out", g_out, "Output file (stdout if omitted)");

    std::string pl_in, pl_out;
    std::optional<std::string> pl_measure;
    auto* plot = app.add_subcommand("plot", "Draw a gadget or a planar instance as SVG");
    plot->add_option("input", pl_in, "Gadget or instance JSON")->required();
    plot->add_option("-o,--out", pl_out, "SVG output")->required();
    plot->add_option("--measure", pl_measure, "Combination measure to overlay");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*solve) return cmd_solve(sa);
        if (*verify) return cmd_verify(v_inst, v_cert, v_N, v_phi, v_out);
        if (*plan) return cmd_plan(p_inst, p_sup, p_out);
        if (*reduce) return cmd_reduce(r_in, r_layout, r_scale, r_out, r_gadget);
        if (*decode) return cmd_decode(d_gadget, d_cert, d_out);
        if (*decide) return cmd_decide(dc_inst, dc_phi, dc_n, dc_method, dc_cap, dc_out);
        if (*square) {
            auto inst = gen_square_example(parse_param("side", g_side), parse_param("d", g_d));
            emit(g_out, dump(instance_to_json(inst)));
            return 0;
        }
        if (*random) {
            auto inst = gen_random(parse_sizes(g_sizes), g_dim, g_bound, g_seed);
            emit(g_out, dump(instance_to_json(inst)));
            return 0;
        }
        if (*plot) return cmd_plot(pl_in, pl_measure, pl_out);
    } catch (const Malformed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --cap or WBARY_CAP)\n";
        return 2;
    } catch (const GuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const RoutingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
