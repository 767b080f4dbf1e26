#include "doctest.h"
#include "helpers.hpp"
#include "prosimpl/glue.hpp"

using namespace prosimpl;

TEST_CASE("standard simplices and boundaries validate with the expected counts") {
    CHECK(standard_simplex(2).counts() == std::vector<std::size_t>{3, 3, 1});
    CHECK(boundary(2).counts() == std::vector<std::size_t>{3, 3});
    CHECK(horn(2, 1).counts() == std::vector<std::size_t>{3, 2});
    for (int n = 0; n <= 3; ++n) CHECK(validate(standard_simplex(n)).empty());
    CHECK(validate(boundary(3)).empty());
    CHECK(validate(horn(3, 1)).empty());
}

TEST_CASE("every fixture passes validation and has consistent normal forms") {
    for (const auto& [name, X] : testutil::fixture_ssets()) {
        CAPTURE(name);
        CHECK(validate(X).empty());
        // face of a face: the simplicial identity d_i d_j = d_{j-1} d_i (i < j)
        // checked through the normal-form face operator
        for (const auto& level : X.simplices)
            for (const auto& id : level) {
                const int n = X.dimension_of(id);
                if (n < 2) continue;
                SimplexRef top{{}, id, n};
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        CHECK(apply_face(X, apply_face(X, top, j), i) ==
                              apply_face(X, apply_face(X, top, i), j - 1));
            }
    }
}

TEST_CASE("products have the oracle counts and commuting projections") {
    ProductResult p11 = product(standard_simplex(1), standard_simplex(1));
    CHECK(p11.object.counts() == std::vector<std::size_t>{4, 5, 2});
    ProductResult p21 = product(standard_simplex(2), standard_simplex(1));
    // chain-count oracle: shuffles of a p-simplex and a q-simplex
    CHECK(p21.object.counts() == std::vector<std::size_t>{6, 12, 10, 3});
    CHECK(testutil::chi(p21.object) == 1); // contractible
    for (const ProductResult* p : {&p11, &p21}) {
        CHECK(validate(p->object).empty());
        CHECK(validate_map(p->proj1).empty());
        CHECK(validate_map(p->proj2).empty());
    }
    // χ multiplicativity on fixtures
    FinSSet s1 = circle();
    ProductResult torus_like = product(s1, s1);
    CHECK(validate(torus_like.object).empty());
    CHECK(testutil::chi(torus_like.object) == testutil::chi(s1) * testutil::chi(s1));
}

TEST_CASE("pushout of the boundary inclusion along collapse gives a sphere model") {
    FinSSet b2 = boundary(2);
    SMap incl = inclusion_map(b2, standard_simplex(2));
    SMap to_pt;
    to_pt.source = b2;
    to_pt.target = standard_simplex(0);
    for (const auto& level : b2.simplices)
        for (const auto& id : level) {
            const int q = b2.dimension_of(id);
            DegeneracyWord w;
            for (int j = q - 1; j >= 0; --j) w.push_back(j);
            to_pt.on[id] = SimplexRef{w, "0", q};
        }
    PushoutResult po = pushout(incl, to_pt);
    CHECK(validate(po.object).empty());
    CHECK(testutil::chi(po.object) == 2); // S²
    CHECK(homology(po.object)[2].rank == 1);
}

TEST_CASE("colimit of a discrete diagram is a disjoint union") {
    DiagramOverCategory D{discrete_category(2),
                          {{"o0", circle()}, {"o1", standard_simplex(1)}},
                          {}};
    ColimitResult g = colimit(D);
    CHECK(validate(g.object).empty());
    CHECK(g.object.count(0) == 3);
    CHECK(g.object.count(1) == 2);
    for (const auto& [obj, leg] : g.cocone) CHECK(validate_map(leg).empty());
}

TEST_CASE("isomorphic and same_assignment behave as equality tests") {
    CHECK(isomorphic(circle(), circle()));
    CHECK(!isomorphic(circle(), standard_simplex(1)));
    SMap id = identity_map(boundary(2));
    CHECK(same_assignment(id, identity_map(boundary(2))));
    CHECK(is_isomorphism(id));
}
