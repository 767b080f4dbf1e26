// prosimpl: batch command-line surface over the core library.
//
// Exit codes: 0 = command completed (including negative verdicts),
// 1 = validation error, 2 = budget exhausted, 64 = usage error.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "prosimpl/homology.hpp"
#include "prosimpl/io.hpp"
#include "prosimpl/subdivision.hpp"

namespace {

using prosimpl::io::json;

json counts_json(const prosimpl::FinSSet& X) {
    json out = json::array();
    for (auto c : X.counts()) out.push_back(c);
    return out;
}

json budgets_json(const prosimpl::Budgets& b) {
    return json{{"nmax", b.nmax},
                {"kmax", b.kmax},
                {"map_cap", b.map_cap},
                {"max_simplices", b.max_simplices},
                {"search_nodes", b.search_nodes},
                {"problems_per_dim", b.problems_per_dim}};
}

// a bare assignment table {"on": {...}} whose values are references into a
// known target object
prosimpl::FunctorData functor_data_from(const json& j, const prosimpl::FinSSet& target) {
    prosimpl::FunctorData data;
    for (const auto& [id, rec] : j.at("on").items()) {
        prosimpl::SimplexRef r = prosimpl::io::ref_from_json(rec);
        auto it = target.dim_of.find(r.base);
        if (it == target.dim_of.end())
            throw prosimpl::ValidationError("assignment table: unknown target simplex \"" +
                                            r.base + "\"");
        r.dim = it->second + static_cast<int>(r.word.size());
        data[id] = r;
    }
    return data;
}

struct App {
    CLI::App cli{"finite simplicial sets, subdivision, and pro-equivalence checks", "prosimpl"};
    prosimpl::Budgets budgets = prosimpl::default_budgets();
    int dim = 3;
    bool meta = false;
    json record;

    void emit(json j) {
        j["budgets"] = budgets_json(budgets);
        if (meta) {
            const auto now = std::chrono::system_clock::now().time_since_epoch();
            j["meta"] = {
                {"unix_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
        }
        std::cout << prosimpl::io::dump(j);
    }
};

void add_budget_flags(CLI::App* cmd, App& app) {
    cmd->add_option("--nmax", app.budgets.nmax, "max lifting-problem dimension");
    cmd->add_option("--sdmax", app.budgets.kmax, "max subdivision depth in searches");
    cmd->add_option("--map-cap", app.budgets.map_cap, "per-dimension cap on enumerated maps");
    cmd->add_option("--max-simplices", app.budgets.max_simplices,
                    "cap on non-degenerate simplices per object");
    cmd->add_option("--search-nodes", app.budgets.search_nodes, "backtracking node budget");
    cmd->add_option("--problems-per-dim", app.budgets.problems_per_dim,
                    "lifting problems sampled per dimension");
    cmd->add_flag("--meta", app.meta, "add a timestamped meta block to the record");
}

int run(int argc, char** argv) {
    using namespace prosimpl;
    App app;
    app.cli.require_subcommand(1);

    std::string input, with, output, kind = "sset";
    std::string map_path, f_path, g_path, diagram_path, promap_path, complex_path;
    std::string omega_path, beta_path, fibrant_one, index_obj;
    std::vector<std::string> fibrants;
    int iterations = 1, trunc = -1, frame_n = 0, max_degree = -1;
    std::string gamma_out;

    auto* validate = app.cli.add_subcommand("validate", "validate a JSON input");
    validate->add_option("--input", input)->required();
    validate->add_option("--kind", kind,
                         "sset | smap | complex | category | functor | diagram | promap");

    auto* sd = app.cli.add_subcommand("sd", "iterated barycentric subdivision");
    sd->add_option("--input", input)->required();
    sd->add_option("--iterations", iterations);
    sd->add_option("--output", output);
    sd->add_option("--emit-gamma", gamma_out);

    auto* nerve_cmd = app.cli.add_subcommand("nerve", "nerve of a finite category");
    nerve_cmd->add_option("--input", input)->required();
    nerve_cmd->add_option("--trunc", trunc, "truncation (required for categories with loops)");
    nerve_cmd->add_option("--output", output);

    auto* ocx = app.cli.add_subcommand("order-complex", "order complex of a complex");
    ocx->add_option("--input", input)->required();
    ocx->add_option("--output", output);

    auto* fp = app.cli.add_subcommand("face-poset", "face poset of a simplicial set");
    fp->add_option("--input", input)->required();
    fp->add_option("--output", output);

    auto* prod = app.cli.add_subcommand("product", "binary product");
    prod->add_option("--input", input)->required();
    prod->add_option("--with", with)->required();
    prod->add_option("--output", output);

    auto* push = app.cli.add_subcommand("pushout", "pushout of two maps with a shared source");
    push->add_option("--f", f_path)->required();
    push->add_option("--g", g_path)->required();
    push->add_option("--output", output);

    auto* hom = app.cli.add_subcommand("homology", "integral homology of a simplicial set");
    hom->add_option("input,--input", input, "simplicial set file");
    hom->add_option("--max-degree", max_degree);
    hom->add_option("--matrices", output,
                    "write the boundary matrices as row-major integer text");

    auto* ex_cmd = app.cli.add_subcommand("ex", "Kan Ex, truncated");
    ex_cmd->add_option("--input", input)->required();
    ex_cmd->add_option("--dim", app.dim);
    ex_cmd->add_option("--output", output);

    auto* weq = app.cli.add_subcommand("check-weq", "bounded weak-equivalence test");
    weq->add_option("--map", map_path)->required();

    auto* hc = app.cli.add_subcommand("hocolim", "homotopy colimit of hom-complexes");
    hc->add_option("--diagram", diagram_path)->required();
    hc->add_option("--fibrant", fibrant_one)->required();
    hc->add_option("--dim", app.dim);
    hc->add_option("--output", output);

    auto* sn = app.cli.add_subcommand("slice-nerve", "slice-category homotopy colimit model");
    sn->add_option("--diagram", diagram_path)->required();
    sn->add_option("--fibrant", fibrant_one)->required();
    sn->add_option("--dim", app.dim);
    sn->add_option("--output", output);

    auto* pe = app.cli.add_subcommand("check-proeq", "pro-equivalence check");
    pe->add_option("--promap", promap_path)->required();
    pe->add_option("--fibrant", fibrants)->expected(-1);
    pe->add_option("--dim", app.dim);

    auto* rlk = app.cli.add_subcommand("realize-lk", "colimit realization over a complex");
    rlk->add_option("--diagram", diagram_path)->required();
    rlk->add_option("--fibrant", fibrant_one)->required();
    rlk->add_option("--complex", complex_path)->required();
    rlk->add_option("--omega", omega_path, "assignment table {\"on\": {...}}")->required();
    rlk->add_option("--dim", app.dim);
    rlk->add_option("--output", output);

    auto* ct = app.cli.add_subcommand("corner-test", "corner extension after subdivision");
    ct->add_option("--promap", promap_path, "levelwise inclusion as an identity-shaped pro-map")
        ->required();
    ct->add_option("--fibrant", fibrant_one)->required();
    ct->add_option("--frame-n", frame_n, "canonical frame dimension");
    ct->add_option("--omega", omega_path, "assignment table over K")->required();
    ct->add_option("--beta", beta_path, "assignment table over L")->required();
    ct->add_option("--dim", app.dim);

    auto* rs = app.cli.add_subcommand("refine-solve", "filtered refinement lifting problem");
    rs->add_option("--promap", promap_path)->required();
    rs->add_option("--fibrant", fibrant_one)->required();
    rs->add_option("--index", index_obj)->required();
    rs->add_option("--n", frame_n, "frame dimension");
    rs->add_option("--f", f_path, "assignment table on the frame corner")->required();

    auto* dot = app.cli.add_subcommand("export-dot", "Graphviz export of a category");
    dot->add_option("--input", input)->required();
    dot->add_option("--output", output);

    for (auto* c : app.cli.get_subcommands({})) add_budget_flags(c, app);
    try {
        app.cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.cli.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.cli.exit(e);
    }

    const Budgets& B = app.budgets;
    auto write_or_skip = [&](const std::string& path, const json& j) {
        if (!path.empty()) io::write_file(path, j);
    };

    if (*validate) {
        const json j = io::load_file(input);
        const std::string dir = io::dir_of(input);
        Report rep;
        if (kind == "sset")
            rep = prosimpl::validate(io::sset_from_json(j, dir));
        else if (kind == "smap")
            rep = validate_map(io::smap_from_json(j, dir));
        else if (kind == "complex")
            rep = validate_complex(io::complex_from_json(j, dir));
        else if (kind == "category")
            rep = validate_category(io::category_from_json(j, dir));
        else if (kind == "functor")
            rep = validate_functor(io::functor_from_json(j, dir));
        else if (kind == "diagram")
            rep = validate_diagram(io::diagram_from_json(j, dir));
        else if (kind == "promap")
            rep = validate_promap(io::promap_from_json(j, dir));
        else
            throw CLI::ValidationError("--kind", "unknown kind " + kind);
        json viol = json::array();
        for (const auto& v : rep) viol.push_back(json{{"where", v.where}, {"message", v.message}});
        app.emit(json{{"command", "validate"},
                      {"kind", kind},
                      {"ok", rep.empty()},
                      {"violations", viol}});
    } else if (*sd) {
        FinSSet X = io::sset_from_json(io::load_file(input), io::dir_of(input));
        SubdivisionTower t = tower(X, iterations, B);
        const FinSSet& top = iterations == 0 ? t.base : t.levels.back();
        write_or_skip(output, io::to_json(top));
        if (!gamma_out.empty()) io::write_file(gamma_out, io::to_json(gamma_composite(t)));
        app.emit(json{{"command", "sd"}, {"iterations", iterations}, {"counts", counts_json(top)}});
    } else if (*nerve_cmd) {
        FinCategory C = io::category_from_json(io::load_file(input), io::dir_of(input));
        std::optional<int> tr;
        if (trunc >= 0) tr = trunc;
        FinSSet N = nerve(C, tr);
        write_or_skip(output, io::to_json(N));
        app.emit(json{{"command", "nerve"}, {"counts", counts_json(N)}});
    } else if (*ocx) {
        SimplicialComplex K = io::complex_from_json(io::load_file(input), io::dir_of(input));
        SimplicialComplex O = order_complex(K);
        write_or_skip(output, io::to_json(O));
        app.emit(json{{"command", "order-complex"},
                      {"vertices", O.vertices.size()},
                      {"facets", O.facets.size()}});
    } else if (*fp) {
        FinSSet X = io::sset_from_json(io::load_file(input), io::dir_of(input));
        FinCategory P = face_poset(X);
        write_or_skip(output, io::to_json(P));
        app.emit(json{{"command", "face-poset"},
                      {"objects", P.objects.size()},
                      {"morphisms", P.morphisms.size()}});
    } else if (*prod) {
        FinSSet A = io::sset_from_json(io::load_file(input), io::dir_of(input));
        FinSSet Bs = io::sset_from_json(io::load_file(with), io::dir_of(with));
        ProductResult P = product(A, Bs, B);
        write_or_skip(output, io::to_json(P.object));
        app.emit(json{{"command", "product"},
                      {"counts", counts_json(P.object)},
                      {"euler_characteristic", P.object.euler_characteristic()}});
    } else if (*push) {
        SMap f = io::smap_from_json(io::load_file(f_path), io::dir_of(f_path));
        SMap g = io::smap_from_json(io::load_file(g_path), io::dir_of(g_path));
        PushoutResult P = pushout(f, g, B);
        write_or_skip(output, io::to_json(P.object));
        app.emit(json{{"command", "pushout"}, {"counts", counts_json(P.object)}});
    } else if (*hom) {
        if (input.empty()) throw CLI::RequiredError("input");
        FinSSet X = io::sset_from_json(io::load_file(input), io::dir_of(input));
        if (!output.empty()) {
            ChainComplex C = chain_complex(X);
            std::string text;
            for (std::size_t n = 0; n < C.boundary.size(); ++n)
                text += "boundary " + std::to_string(n) + "\n" + C.boundary[n].to_text();
            std::ofstream(output) << text;
        }
        std::vector<HomologyGroup> H = homology(X);
        json degrees = json::array();
        for (std::size_t n = 0; n < H.size(); ++n) {
            if (max_degree >= 0 && static_cast<int>(n) > max_degree) break;
            json tors = json::array();
            for (const auto& t : H[n].torsion) tors.push_back(t.str());
            degrees.push_back(json{{"degree", n},
                                   {"rank", H[n].rank},
                                   {"invariant_factors", tors},
                                   {"group", H[n].to_string()}});
        }
        app.emit(json{{"command", "homology"}, {"degrees", degrees}});
    } else if (*ex_cmd) {
        FinSSet X = io::sset_from_json(io::load_file(input), io::dir_of(input));
        ExResult E = ex(X, app.dim, B);
        write_or_skip(output, io::to_json(E.object));
        app.emit(json{{"command", "ex"}, {"dim", app.dim}, {"counts", counts_json(E.object)}});
    } else if (*weq) {
        SMap f = io::smap_from_json(io::load_file(map_path), io::dir_of(map_path));
        WeqVerdict v = weq_test(f, B);
        app.emit(json{{"command", "check-weq"},
                      {"status", v.status == WeqVerdict::Status::CounterexampleFound
                                     ? "CounterexampleFound"
                                     : "NoObstructionFound"},
                      {"witness", v.witness}});
    } else if (*hc) {
        Diagram X = io::diagram_from_json(io::load_file(diagram_path), io::dir_of(diagram_path));
        FibrantTestObject Z =
            io::fibrant_from_json(io::load_file(fibrant_one), io::dir_of(fibrant_one));
        Hocolim H = hocolim(X, Z, app.dim, B);
        write_or_skip(output, io::to_json(H.object));
        app.emit(
            json{{"command", "hocolim"}, {"dim", app.dim}, {"counts", counts_json(H.object)}});
    } else if (*sn) {
        Diagram X = io::diagram_from_json(io::load_file(diagram_path), io::dir_of(diagram_path));
        FibrantTestObject Z =
            io::fibrant_from_json(io::load_file(fibrant_one), io::dir_of(fibrant_one));
        SliceNerve S = slice_nerve(X, Z, app.dim, B);
        write_or_skip(output, io::to_json(S.object));
        HocolimComparison cmp = compare_hocolim_models(X, Z, app.dim, B);
        json hcc = json::array(), snc = json::array();
        for (auto c : cmp.hocolim_counts) hcc.push_back(c);
        for (auto c : cmp.slice_counts) snc.push_back(c);
        app.emit(json{{"command", "slice-nerve"},
                      {"dim", app.dim},
                      {"counts", counts_json(S.object)},
                      {"comparison",
                       json{{"hocolim", hcc}, {"slice", snc}, {"equal", cmp.equal}}}});
    } else if (*pe) {
        ProMap p = io::promap_from_json(io::load_file(promap_path), io::dir_of(promap_path));
        std::vector<FibrantTestObject> Zs;
        for (const auto& z : fibrants)
            Zs.push_back(io::fibrant_from_json(io::load_file(z), io::dir_of(z)));
        ProEqVerdict v = pro_equivalence_check(p, Zs, app.dim, B);
        json checks = json::array();
        for (const auto& c : v.checks) checks.push_back(c);
        app.emit(json{{"command", "check-proeq"},
                      {"status", v.status == ProEqVerdict::Status::NotProEquivalence
                                     ? "NotProEquivalence"
                                     : "NoObstructionFound"},
                      {"witness", v.witness},
                      {"checks", checks},
                      {"dim", app.dim}});
    } else if (*rlk) {
        Diagram X = io::diagram_from_json(io::load_file(diagram_path), io::dir_of(diagram_path));
        FibrantTestObject Z =
            io::fibrant_from_json(io::load_file(fibrant_one), io::dir_of(fibrant_one));
        SimplicialComplex K =
            io::complex_from_json(io::load_file(complex_path), io::dir_of(complex_path));
        Hocolim H = hocolim(X, Z, app.dim, B);
        LKRealization lk = realize_LK(H, K, functor_data_from(io::load_file(omega_path), H.object), B);
        write_or_skip(output, io::to_json(lk.object));
        app.emit(json{{"command", "realize-lk"},
                      {"counts", counts_json(lk.object)},
                      {"verified", lk.verified}});
    } else if (*ct) {
        ProMap p = io::promap_from_json(io::load_file(promap_path), io::dir_of(promap_path));
        CornerProblem cp;
        cp.X = p.X;
        cp.Y = p.Y;
        cp.incl = p.theta;
        cp.frame = standard_corner_frame(frame_n);
        cp.Z = io::fibrant_from_json(io::load_file(fibrant_one), io::dir_of(fibrant_one));
        cp.D = app.dim;
        Hocolim HY = hocolim(cp.Y, cp.Z, cp.D, B);
        Hocolim HX = hocolim(cp.X, cp.Z, cp.D, B);
        cp.omega = realize_functor(complex_to_sset(cp.frame.K), HY.object,
                                   functor_data_from(io::load_file(omega_path), HY.object));
        cp.beta = realize_functor(complex_to_sset(cp.frame.L), HX.object,
                                  functor_data_from(io::load_file(beta_path), HX.object));
        CornerResult r = corner_extension_test(cp, B.kmax, B);
        app.emit(json{{"command", "corner-test"},
                      {"status", r.success ? "success" : "exhausted"},
                      {"k", r.k},
                      {"transcript", r.transcript}});
    } else if (*rs) {
        ProMap p = io::promap_from_json(io::load_file(promap_path), io::dir_of(promap_path));
        RefinementProblem rp;
        rp.X = p.X;
        rp.Y = p.Y;
        rp.incl = p.theta;
        rp.index = index_obj;
        rp.n = frame_n;
        rp.Z = io::fibrant_from_json(io::load_file(fibrant_one), io::dir_of(fibrant_one));
        FrameCorner fc = frame_corner(rp.n, rp.Y.objects.at(rp.index), rp.incl.at(rp.index), B);
        int maxd = 0;
        for (const auto& [o, v] : rp.Y.objects) maxd = std::max(maxd, v.dim());
        rp.f.source = fc.corner;
        rp.f.target = rp.Z.materialize(rp.n + maxd);
        for (const auto& [id, ref] : functor_data_from(io::load_file(f_path), rp.f.target)) rp.f.on[id] = ref;
        RefinementResult r = filtered_refinement_solve(rp, B);
        app.emit(json{{"command", "refine-solve"},
                      {"status", r.solved ? "solved" : "exhausted"},
                      {"alpha", r.alpha},
                      {"transcript", r.transcript}});
    } else if (*dot) {
        FinCategory C = io::category_from_json(io::load_file(input), io::dir_of(input));
        const std::string text = to_dot(C, "category");
        if (!output.empty()) {
            std::ofstream out(output);
            out << text;
        } else {
            std::cout << text;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const prosimpl::BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 2;
    } catch (const prosimpl::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
