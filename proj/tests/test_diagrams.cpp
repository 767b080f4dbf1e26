#include "doctest.h"
#include "helpers.hpp"
#include "prosimpl/diagrams.hpp"

using namespace prosimpl;

namespace {

Diagram constant_point(const FinCategory& I) {
    Diagram D{I, {}, {}};
    for (const auto& o : I.objects) D.objects[o] = standard_simplex(0);
    for (const auto& m : I.morphisms)
        if (!I.is_identity(m.id)) D.arrows[m.id] = identity_map(standard_simplex(0));
    return D;
}

SMap collapse_circle() {
    SMap c;
    c.source = circle();
    c.target = standard_simplex(0);
    c.on["v"] = SimplexRef{{}, "0", 0};
    c.on["e"] = SimplexRef{{0}, "0", 1};
    return c;
}

} // namespace

TEST_CASE("hocolim over the terminal category is the function complex") {
    Diagram circ{terminal_category(), {{"*", circle()}}, {}};
    FibrantTestObject bz2 = fibrant_groupoid("B(Z/2)", cyclic_group_category(2));
    for (int D = 1; D <= 3; ++D) {
        CAPTURE(D);
        Hocolim h = hocolim(circ, bz2, D);
        FunctionComplex fc = function_complex(circle(), bz2.materialize(D + 1), D);
        CHECK(h.object.counts() == fc.object.counts());
    }
}

TEST_CASE("hocolim of a constant-point diagram at Z = point is the nerve of the index") {
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    for (const FinCategory& I : {terminal_category(), arrow_category(), cospan_category()}) {
        CAPTURE(I.objects.size());
        Hocolim h = hocolim(constant_point(I), zpt, 2);
        CHECK(h.object.counts() == nerve(I).counts());
        CHECK(validate_map(h.to_nerve).empty());
    }
}

TEST_CASE("slice nerve model agrees with the hocolim model") {
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    FibrantTestObject zb = fibrant_sset("bd1", boundary(1));
    Diagram cpt = constant_point(arrow_category());

    SliceNerve s1 =
        slice_nerve(Diagram{terminal_category(), {{"*", standard_simplex(0)}}, {}}, zpt, 2);
    CHECK(s1.object.counts() == std::vector<std::size_t>{1});

    SliceNerve s2 = slice_nerve(cpt, zb, 2);
    CHECK(s2.object.counts() == std::vector<std::size_t>{4, 2});

    HocolimComparison cmp = compare_hocolim_models(cpt, zpt, 2);
    CHECK(cmp.equal);
}

TEST_CASE("identity pro-maps induce identities and commute with the nerve projection") {
    Diagram cpt = constant_point(arrow_category());
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    ProMap idp{identity_functor(cpt.index), cpt, cpt, {}};
    idp.theta["0"] = identity_map(standard_simplex(0));
    idp.theta["1"] = identity_map(standard_simplex(0));
    REQUIRE(validate_promap(idp).empty());
    InducedHocolim ih = induced_hocolim_map(idp, zpt, 2);
    CHECK(same_assignment(ih.map, identity_map(ih.source.object)));
    CHECK(same_assignment(compose(nerve_map(idp.alpha), ih.source.to_nerve),
                          compose(ih.target.to_nerve, ih.map)));
}

TEST_CASE("pro-equivalence verdicts") {
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    FibrantTestObject bz2 = fibrant_groupoid("B(Z/2)", cyclic_group_category(2));

    Diagram cpt = constant_point(arrow_category());
    ProMap idp{identity_functor(cpt.index), cpt, cpt, {}};
    idp.theta["0"] = identity_map(standard_simplex(0));
    idp.theta["1"] = identity_map(standard_simplex(0));
    ProEqVerdict v1 = pro_equivalence_check(idp, {zpt, bz2}, 2);
    CHECK(v1.status == ProEqVerdict::Status::NoObstructionFound);

    Diagram dcirc{terminal_category(), {{"*", circle()}}, {}};
    Diagram dpt{terminal_category(), {{"*", standard_simplex(0)}}, {}};
    ProMap coll{identity_functor(terminal_category()), dcirc, dpt, {{"*", collapse_circle()}}};
    ProEqVerdict v2 = pro_equivalence_check(coll, {bz2}, 2);
    CHECK(v2.status == ProEqVerdict::Status::NotProEquivalence);
    CHECK(v2.witness.find("pi0") != std::string::npos);

    // π₀-broken index functor: caught at the nerve stage before any Z
    Functor pick;
    pick.source = discrete_category(2);
    pick.target = terminal_category();
    pick.on_objects = {{"o0", "*"}, {"o1", "*"}};
    pick.on_morphisms = {{"id:o0", "id:*"}, {"id:o1", "id:*"}};
    Diagram d2o{discrete_category(2),
                {{"o0", standard_simplex(0)}, {"o1", standard_simplex(0)}},
                {}};
    ProMap discp{pick, dpt, d2o, {}};
    discp.theta["o0"] = identity_map(standard_simplex(0));
    discp.theta["o1"] = identity_map(standard_simplex(0));
    ProEqVerdict v3 = pro_equivalence_check(discp, {}, 2);
    CHECK(v3.status == ProEqVerdict::Status::NotProEquivalence);
    CHECK(v3.witness.find("nerve") != std::string::npos);
}

TEST_CASE("colimit realizations over a complex") {
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    Diagram dbd{terminal_category(), {{"*", boundary(1)}}, {}};
    Hocolim hb = hocolim(dbd, zpt, 2);
    const std::string v0 = hb.object.simplices[0][0];

    SUBCASE("single point recovers the diagram value") {
        SimplicialComplex K = full_simplex_complex(0);
        SMap om;
        om.source = complex_to_sset(K);
        om.target = hb.object;
        om.on["0"] = SimplexRef{{}, v0, 0};
        LKRealization lk = realize_LK(hb, K, om);
        CHECK(lk.verified);
        CHECK(isomorphic(lk.object, boundary(1)));
        CHECK(validate_map(lk.f).empty());
    }
    SUBCASE("two points double the value") {
        SimplicialComplex K = boundary_complex(1);
        SMap om;
        om.source = complex_to_sset(K);
        om.target = hb.object;
        om.on["0"] = SimplexRef{{}, v0, 0};
        om.on["1"] = SimplexRef{{}, v0, 0};
        LKRealization lk = realize_LK(hb, K, om);
        CHECK(lk.verified);
        CHECK(lk.object.count(0) == 4);
    }
    SUBCASE("an interval over the point diagram is a prism over the point") {
        Diagram dpt{terminal_category(), {{"*", standard_simplex(0)}}, {}};
        Hocolim hp = hocolim(dpt, zpt, 2);
        SimplicialComplex K = full_simplex_complex(1);
        SMap om;
        om.source = complex_to_sset(K);
        om.target = hp.object;
        const std::string w0 = hp.object.simplices[0][0];
        om.on["0"] = SimplexRef{{}, w0, 0};
        om.on["1"] = SimplexRef{{}, w0, 0};
        om.on["0|1"] = SimplexRef{{0}, w0, 1};
        LKRealization lk = realize_LK(hp, K, om);
        CHECK(lk.verified);
        CHECK(lk.object.counts() == std::vector<std::size_t>{2, 1});
    }
}

TEST_CASE("corner extension test succeeds on solvable frames") {
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    Diagram dpt{terminal_category(), {{"*", standard_simplex(0)}}, {}};

    SUBCASE("X = Y") {
        std::map<std::string, SMap> inc{{"*", identity_map(standard_simplex(0))}};
        CornerProblem cp{dpt, dpt, inc, standard_corner_frame(0), zpt, 2, {}, {}};
        Hocolim hy = hocolim(dpt, zpt, 2);
        cp.omega.source = complex_to_sset(cp.frame.K);
        cp.omega.target = hy.object;
        cp.beta.source = complex_to_sset(cp.frame.L);
        cp.beta.target = hy.object;
        cp.beta.on["0.0"] = SimplexRef{{}, hy.object.simplices[0][0], 0};
        CornerResult cr = corner_extension_test(cp, 1);
        CHECK(cr.success);
        CHECK(cr.k == 0);
        CHECK(cr.transcript.find("result=success") != std::string::npos);
    }
    SUBCASE("horn inclusion into the simplex") {
        Diagram dx{terminal_category(), {{"*", horn(2, 1)}}, {}};
        Diagram dy{terminal_category(), {{"*", standard_simplex(2)}}, {}};
        std::map<std::string, SMap> inc{{"*", inclusion_map(horn(2, 1), standard_simplex(2))}};
        CornerProblem cp{dx, dy, inc, standard_corner_frame(0), zpt, 2, {}, {}};
        Hocolim hy = hocolim(dy, zpt, 2);
        Hocolim hx = hocolim(dx, zpt, 2);
        cp.omega.source = complex_to_sset(cp.frame.K);
        cp.omega.target = hy.object;
        cp.beta.source = complex_to_sset(cp.frame.L);
        cp.beta.target = hx.object;
        cp.beta.on["0.0"] = SimplexRef{{}, hx.object.simplices[0][0], 0};
        CornerResult cr = corner_extension_test(cp, 1);
        CHECK(cr.success);
        CHECK(cr.k == 0);
    }
}

TEST_CASE("filtered refinement solves the trivial inclusion") {
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    Diagram dpt{terminal_category(), {{"*", standard_simplex(0)}}, {}};
    std::map<std::string, SMap> inc{{"*", identity_map(standard_simplex(0))}};
    RefinementProblem rp{dpt, dpt, inc, "*", 1, zpt, {}};
    FrameCorner fc = frame_corner(1, standard_simplex(0), inc.at("*"));
    rp.f.source = fc.corner;
    rp.f.target = standard_simplex(0);
    for (const auto& level : fc.corner.simplices)
        for (const auto& id : level) {
            const int q = fc.corner.dimension_of(id);
            DegeneracyWord w;
            for (int j = q - 1; j >= 0; --j) w.push_back(j);
            rp.f.on[id] = SimplexRef{w, "0", q};
        }
    RefinementResult rr = filtered_refinement_solve(rp);
    CHECK(rr.solved);
    CHECK(rr.alpha == "id:*");
    CHECK(validate_map(rr.lift).empty());
}

TEST_CASE("colim_hom over the terminal index is the function complex") {
    Diagram circ{terminal_category(), {{"*", circle()}}, {}};
    FibrantTestObject bz2 = fibrant_groupoid("B(Z/2)", cyclic_group_category(2));
    FinSSet ch = colim_hom(circ, bz2, 2);
    FunctionComplex fc = function_complex(circle(), bz2.materialize(3), 2);
    CHECK(ch.counts() == fc.object.counts());
}

TEST_CASE("hocolim simplices are recoverable through references") {
    Diagram cpt = constant_point(arrow_category());
    FibrantTestObject zpt = fibrant_sset("pt", standard_simplex(0));
    Hocolim h = hocolim(cpt, zpt, 2);
    for (const auto& level : h.object.simplices)
        for (const auto& id : level) {
            HocolimSimplex s = h.element(id);
            CHECK(h.ref_of(s).base == id);
        }
}
