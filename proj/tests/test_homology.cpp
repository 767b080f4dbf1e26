#include "doctest.h"
#include "helpers.hpp"
#include "prosimpl/subdivision.hpp"

using namespace prosimpl;
using testutil::minor_gcd_factors;

namespace {

HomologyGroup grp(int rank, std::vector<Int> tors = {}) {
    HomologyGroup h;
    h.rank = rank;
    h.torsion = std::move(tors);
    return h;
}

} // namespace

TEST_CASE("homology oracles") {
    CHECK(homology(circle()) == std::vector<HomologyGroup>{grp(1), grp(1)});
    CHECK(homology(complex_to_sset(rp2_complex())) ==
          std::vector<HomologyGroup>{grp(1), grp(0, {2}), grp(0)});
    CHECK(homology(complex_to_sset(torus_complex())) ==
          std::vector<HomologyGroup>{grp(1), grp(2), grp(1)});
    for (int n = 0; n <= 3; ++n) {
        const auto h = homology(standard_simplex(n));
        CHECK(h[0] == grp(1));
        for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] == grp(0));
    }
    CHECK(homology(boundary(3)) == std::vector<HomologyGroup>{grp(1), grp(0), grp(1)});
}

TEST_CASE("boundary matrices square to zero on every fixture") {
    for (const auto& [name, X] : testutil::fixture_ssets()) {
        CAPTURE(name);
        ChainComplex C = chain_complex(X);
        for (std::size_t n = 1; n + 1 < C.boundary.size(); ++n)
            CHECK(mat_mul(C.boundary[n], C.boundary[n + 1]).is_zero());
    }
}

TEST_CASE("alternating rank sum equals the Euler characteristic") {
    for (const auto& [name, X] : testutil::fixture_ssets()) {
        CAPTURE(name);
        long long betti = 0;
        int sign = 1;
        for (const auto& h : homology(X)) {
            betti += sign * h.rank;
            sign = -sign;
        }
        CHECK(betti == testutil::chi(X));
    }
}

TEST_CASE("Smith normal form: fixed examples against the minor-gcd oracle") {
    IMat m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 3;
    SNF s = smith_normal_form(m);
    CHECK(s.D.at(0, 0) == 1);
    CHECK(s.D.at(1, 1) == 6);
    CHECK(s.invariant_factors() == minor_gcd_factors(m));

    SNF id = smith_normal_form(identity_mat(3));
    CHECK(id.D.at(0, 0) == 1);
    CHECK(id.D.at(2, 2) == 1);
    SNF z = smith_normal_form(IMat(2, 3));
    CHECK(z.D.is_zero());
}

TEST_CASE("Smith normal form on random matrices: reconstruction and oracle factors") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 100; ++trial) {
        CAPTURE(trial);
        IMat m = testutil::random_mat(rng);
        SNF s = smith_normal_form(m);
        // bit-exact reconstruction D = U·M·V
        IMat umv = mat_mul(mat_mul(s.U, m), s.V);
        REQUIRE(umv.rows == s.D.rows);
        for (int i = 0; i < umv.rows; ++i)
            for (int j = 0; j < umv.cols; ++j) CHECK(umv.at(i, j) == s.D.at(i, j));
        // divisibility chain
        auto f = s.invariant_factors();
        for (std::size_t k = 1; k < f.size(); ++k) CHECK(f[k] % f[k - 1] == 0);
        // unimodularity of the change-of-basis matrices
        CHECK(boost::multiprecision::abs(testutil::bareiss_det(s.U.a)) == 1);
        CHECK(boost::multiprecision::abs(testutil::bareiss_det(s.V.a)) == 1);
        // independent invariant factors for small matrices
        if (std::min(m.rows, m.cols) <= 5) CHECK(f == minor_gcd_factors(m));
    }
}

TEST_CASE("induced maps on homology") {
    SdResult sb = sd_sset(boundary(2));
    InducedHomology ih = induced_map_homology(sb.gamma);
    CHECK(ih.all_iso);
    CHECK(ih.iso.size() >= 2);

    SMap collapse;
    collapse.source = circle();
    collapse.target = standard_simplex(0);
    collapse.on["v"] = SimplexRef{{}, "0", 0};
    collapse.on["e"] = SimplexRef{{0}, "0", 1};
    InducedHomology ic = induced_map_homology(collapse);
    CHECK(!ic.all_iso);

    InducedHomology ii = induced_map_homology(identity_map(complex_to_sset(torus_complex())));
    CHECK(ii.all_iso);
}

TEST_CASE("pi0 and groupoid nerves") {
    CHECK(pi0(boundary(1)).count == 2);
    CHECK(pi0(circle()).count == 1);
    FinSSet bz2 = groupoid_nerve(cyclic_group_category(2), 3);
    CHECK(bz2.kan);
    CHECK(bz2.counts() == std::vector<std::size_t>{1, 1, 1, 1});
    // H₁(B(Z/2)) = Z/2, visible inside the truncation's valid range
    const auto h = homology(bz2);
    CHECK(h[0] == grp(1));
    CHECK(h[1] == grp(0, {2}));
    CHECK_THROWS_AS(groupoid_nerve(arrow_category(), 3), ValidationError);
}
