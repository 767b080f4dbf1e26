#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "prosimpl/category.hpp"
#include "prosimpl/sset.hpp"

namespace prosimpl {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix, row-major.
struct IMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<Int>> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(r, std::vector<Int>(c, 0)) {}
    Int& at(int i, int j) { return a[i][j]; }
    const Int& at(int i, int j) const { return a[i][j]; }
    bool is_zero() const;
    std::string to_text() const; // plain row-major integer text
};

IMat identity_mat(int n);
IMat mat_mul(const IMat& A, const IMat& B);

// D = U · M · V with U, V unimodular and D diagonal, d₁ | d₂ | ..., dᵢ ≥ 0.
// The reconstruction identity is re-verified before returning.
struct SNF {
    IMat D, U, V;
    std::vector<Int> invariant_factors() const; // the non-zero diagonal
};
SNF smith_normal_form(const IMat& M);

// Normalized chains: free on non-degenerate simplices, faces with degenerate
// normal form dropped from the boundary.
struct ChainComplex {
    std::vector<std::vector<std::string>> basis; // per degree
    std::vector<IMat> boundary;                  // boundary[n]: C_n -> C_{n-1}; boundary[0] is 0x|basis0|
    std::map<std::string, int> index;            // simplex id -> column index in its degree
};
ChainComplex chain_complex(const FinSSet& X);

struct HomologyGroup {
    int rank = 0;
    std::vector<Int> torsion; // invariant factors > 1, divisibility-ordered

    bool operator==(const HomologyGroup& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
    std::string to_string() const; // e.g. "Z^2", "Z + Z/2", "0"
};

// Degrees 0..dim for complete X; 0..cap-2 for a truncation (the range where
// the missing high-dimensional simplices cannot matter).
std::vector<HomologyGroup> homology(const FinSSet& X);
int valid_homology_degrees(const FinSSet& X); // = number of degrees reported

struct InducedHomology {
    std::vector<HomologyGroup> source, target;
    std::vector<IMat> matrix; // per degree, in the chosen homology bases
    std::vector<bool> iso;    // per common valid degree
    bool all_iso = true;      // over the common valid range
};
InducedHomology induced_map_homology(const SMap& f);

struct Pi0 {
    std::size_t count = 0;
    std::map<std::string, int> component; // vertex id -> component index
};
Pi0 pi0(const FinSSet& X);

// Nerve of a finite groupoid truncated at dimension D, flagged Kan.
FinSSet groupoid_nerve(const FinCategory& G, int D);

} // namespace prosimpl
