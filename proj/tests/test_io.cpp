#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "prosimpl/io.hpp"

using namespace prosimpl;
using prosimpl::io::json;

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "fixtures"
#endif

namespace {
const std::string fixtures = FIXTURE_DIR;
}

TEST_CASE("simplicial sets round-trip through JSON byte-identically") {
    for (const auto& [name, X] : testutil::fixture_ssets()) {
        CAPTURE(name);
        json j = io::to_json(X);
        FinSSet Y = io::sset_from_json(j);
        CHECK(validate(Y).empty());
        CHECK(X.counts() == Y.counts());
        CHECK(io::dump(io::to_json(Y)) == io::dump(j));
        CHECK(isomorphic(X, Y));
    }
}

TEST_CASE("maps, complexes, categories, and functors round-trip") {
    SMap g = gamma_chain(boundary_complex(2), 1);
    SMap g2 = io::smap_from_json(io::to_json(g));
    CHECK(validate_map(g2).empty());
    CHECK(same_assignment(g, g2));

    SimplicialComplex K = hexagon_complex();
    SimplicialComplex K2 = io::complex_from_json(io::to_json(K));
    CHECK(K.vertices == K2.vertices);
    CHECK(K.facets == K2.facets);

    for (const FinCategory& C : {terminal_category(), arrow_category(), cospan_category(),
                                 cyclic_group_category(2)}) {
        FinCategory C2 = io::category_from_json(io::to_json(C));
        CHECK(validate_category(C2).empty());
        CHECK(C.objects == C2.objects);
        CHECK(C.table == C2.table);
    }

    Functor F = identity_functor(cospan_category());
    Functor F2 = io::functor_from_json(io::to_json(F));
    CHECK(validate_functor(F2).empty());
    CHECK(F.on_morphisms == F2.on_morphisms);
}

TEST_CASE("diagrams, pro-maps, and fibrant test objects round-trip") {
    Diagram D{arrow_category(),
              {{"0", circle()}, {"1", standard_simplex(0)}},
              {}};
    SMap c;
    c.source = circle();
    c.target = standard_simplex(0);
    c.on["v"] = SimplexRef{{}, "0", 0};
    c.on["e"] = SimplexRef{{0}, "0", 1};
    D.arrows["0<=1"] = c;
    REQUIRE(validate_diagram(D).empty());
    Diagram D2 = io::diagram_from_json(io::to_json(D));
    CHECK(validate_diagram(D2).empty());
    CHECK(io::dump(io::to_json(D2)) == io::dump(io::to_json(D)));

    ProMap p{identity_functor(arrow_category()), D, D,
             {{"0", identity_map(circle())}, {"1", identity_map(standard_simplex(0))}}};
    REQUIRE(validate_promap(p).empty());
    ProMap p2 = io::promap_from_json(io::to_json(p));
    CHECK(validate_promap(p2).empty());
    CHECK(io::dump(io::to_json(p2)) == io::dump(io::to_json(p)));

    FibrantTestObject z = fibrant_groupoid("B(Z/2)", cyclic_group_category(2));
    FibrantTestObject z2 = io::fibrant_from_json(io::to_json(z));
    CHECK(z2.name == z.name);
    CHECK(isomorphic(z2.materialize(3), z.materialize(3)));
}

TEST_CASE("every shipped fixture parses and validates") {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(fixtures)) {
        if (entry.path().extension() != ".json") continue;
        const std::string path = entry.path().string();
        const std::string stem = entry.path().stem().string();
        CAPTURE(path);
        json j = io::load_file(path);
        const std::string dir = io::dir_of(path);
        ++seen;
        if (stem.rfind("promap", 0) == 0)
            CHECK(validate_promap(io::promap_from_json(j, dir)).empty());
        else if (stem.rfind("diag", 0) == 0)
            CHECK(validate_diagram(io::diagram_from_json(j, dir)).empty());
        else if (stem.find("cat") != std::string::npos || stem.find("group") != std::string::npos ||
                 stem.find("poset") != std::string::npos)
            CHECK(validate_category(io::category_from_json(j, dir)).empty());
        else if (stem.find("fibrant") != std::string::npos || stem == "bz2")
            CHECK(validate(io::fibrant_from_json(j, dir).materialize(3)).empty());
        else if (stem == "hexagon")
            CHECK(validate_complex(io::complex_from_json(j, dir)).empty());
        else
            CHECK(validate(io::sset_from_json(j, dir)).empty());
    }
    CHECK(seen >= 20);
}

TEST_CASE("corrupted fixtures fail with precisely located violations") {
    const std::string dir = fixtures + "/corrupt";

    // malformed structure: rejected at parse time, naming the simplex
    CHECK_THROWS_WITH_AS(io::sset_from_json(io::load_file(dir + "/bad_arity.json"), dir),
                         doctest::Contains("\"t\""), ValidationError);
    CHECK_THROWS_WITH_AS(io::sset_from_json(io::load_file(dir + "/bad_base.json"), dir),
                         doctest::Contains("missing"), ValidationError);

    // well-formed but invalid: flagged by validation with a location
    Report rw = validate(io::sset_from_json(io::load_file(dir + "/bad_word.json"), dir));
    REQUIRE(!rw.empty());
    CHECK(rw.front().where == "t");

    Report rm = validate_map(io::smap_from_json(io::load_file(dir + "/bad_map.json"), dir));
    REQUIRE(!rm.empty());
    CHECK(rm.front().where == "0|1");

    Report rc = validate_category(io::category_from_json(io::load_file(dir + "/bad_category.json"), dir));
    REQUIRE(!rc.empty());
    CHECK(rc.front().message.find("f∘g") != std::string::npos);
}
