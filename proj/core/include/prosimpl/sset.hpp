#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "prosimpl/budget.hpp"
#include "prosimpl/error.hpp"

namespace prosimpl {

// Strictly decreasing list of degeneracy indices j1 > j2 > ... > jt >= 0,
// denoting the composite s_{j1} ∘ ... ∘ s_{jt}.  Empty = identity.
using DegeneracyWord = std::vector<int>;

bool is_valid_word(const DegeneracyWord& w);

// Eilenberg–Zilber normal form of a simplex: a degeneracy word applied to a
// non-degenerate base simplex.
struct SimplexRef {
    DegeneracyWord word;
    std::string base;
    int dim = 0; // dim(base) + word.size()

    bool degenerate() const { return !word.empty(); }
    bool operator==(const SimplexRef& o) const { return word == o.word && base == o.base; }
    bool operator!=(const SimplexRef& o) const { return !(*this == o); }
};

std::string ref_key(const SimplexRef& r);

// A finite simplicial set presented by its non-degenerate simplices.
// simplices[n] lists the non-degenerate n-simplex ids (sorted); faces maps
// each id of dimension >= 1 to its n+1 faces d_0..d_n, each in normal form.
//
// cap == -1 means the object is complete; cap == D means the presentation is
// truncated at dimension D (faces and identities only guaranteed below D).
struct FinSSet {
    std::vector<std::vector<std::string>> simplices;
    std::unordered_map<std::string, std::vector<SimplexRef>> faces;
    int cap = -1;
    bool kan = false; // trusted Kan flag (set for groupoid nerves)

    bool complete() const { return cap < 0; }
    int dim() const { return static_cast<int>(simplices.size()) - 1; }
    bool has(const std::string& id) const { return dim_of.count(id) != 0; }
    int dimension_of(const std::string& id) const;
    std::size_t count(int n) const {
        return n >= 0 && n < static_cast<int>(simplices.size()) ? simplices[n].size() : 0;
    }
    std::vector<std::size_t> counts() const;
    std::size_t total() const;
    long long euler_characteristic() const;

    void add_simplex(int n, const std::string& id, std::vector<SimplexRef> fs = {});
    void reindex(); // rebuild dim_of and sort simplex lists

    std::unordered_map<std::string, int> dim_of;
};

// --- the rewriting engine ---------------------------------------------------

// s_j applied on the outside of a normal form.
SimplexRef apply_degeneracy(const SimplexRef& r, int j);
// Whole word applied on the outside (innermost entry first).
SimplexRef apply_word(const DegeneracyWord& w, const SimplexRef& r);
// d_i applied on the outside; needs the ambient simplicial set for base faces.
SimplexRef apply_face(const FinSSet& X, const SimplexRef& r, int i);

// A raw operator expression: ops applied to the base from the inside out,
// ops.front() innermost.
struct RawOp {
    bool is_face = false;
    int index = 0;
};
struct RawExpr {
    SimplexRef base;
    std::vector<RawOp> ops;
};
SimplexRef normalize(const FinSSet& X, const RawExpr& e);

// All simplices of X in dimension n (degenerate included), in a fixed order.
std::vector<SimplexRef> all_refs(const FinSSet& X, int n);

// --- maps --------------------------------------------------------------------

struct SMap {
    FinSSet source, target;
    std::unordered_map<std::string, SimplexRef> on; // non-degenerate source id -> target ref

    SimplexRef apply(const SimplexRef& r) const;
};

SMap identity_map(const FinSSet& X);
SMap compose(const SMap& second, const SMap& first); // second ∘ first
bool same_assignment(const SMap& f, const SMap& g);
bool is_isomorphism(const SMap& f);

// --- validation ---------------------------------------------------------------

struct Violation {
    std::string where;   // simplex or map entry
    std::string message;
};
using Report = std::vector<Violation>;

Report validate(const FinSSet& X);
Report validate_map(const SMap& f);

// --- standard generators --------------------------------------------------

// Δⁿ, with ids "0|1|..|n" style vertex subsets (shared with ∂Δⁿ and horns).
FinSSet standard_simplex(int n);
FinSSet boundary(int n);
FinSSet horn(int n, int k);
FinSSet circle(); // 1 vertex "v", 1 edge "e"

// The simplex of Δⁿ given by a weakly increasing vertex sequence, in normal
// form.  Sequences are the ordinal-operator model of Δⁿ.
SimplexRef delta_ref(int n, const std::vector<int>& vertex_seq);
std::vector<int> delta_seq(int n, const SimplexRef& r);

// SMap Δ^m → Δⁿ induced by a monotone vertex map [m] -> [n].
SMap ordinal_smap(const std::vector<int>& theta, int n);
// Characteristic map Δⁿ → X of a non-degenerate n-simplex.
SMap characteristic_map(const FinSSet& X, const std::string& id);

// Truncation at dimension D: drops simplices above D and marks the cap.
FinSSet truncate(const FinSSet& X, int D);

// Inclusion of a subobject (every simplex of A is a simplex of B with the
// same id and faces).  Checked.
SMap inclusion_map(const FinSSet& A, const FinSSet& B);

// --- products ----------------------------------------------------------------

struct ProductResult {
    FinSSet object;
    SMap proj1, proj2;
    // (id in product) -> pair of component refs
    std::unordered_map<std::string, std::pair<SimplexRef, SimplexRef>> components;
    // key "ref_key(a)*ref_key(b)" -> normal form in product
    std::unordered_map<std::string, SimplexRef> pair_nf;

    SimplexRef pair_ref(const SimplexRef& a, const SimplexRef& b) const;
};

ProductResult product(const FinSSet& X, const FinSSet& Y,
                      const Budgets& budgets = default_budgets());

// f × g on products built by product().
SMap product_map(const ProductResult& src, const ProductResult& dst,
                 const SMap& f, const SMap& g);

// Structural isomorphism test: dimensionwise bijection commuting with faces.
bool isomorphic(const FinSSet& X, const FinSSet& Y);

} // namespace prosimpl
