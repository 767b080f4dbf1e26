#pragma once

#include <memory>

#include "prosimpl/subdivision.hpp"

namespace prosimpl {

// Exhaustive, deterministic enumeration of simplicial maps A -> Y.  Fixed
// entries pre-assign some non-degenerate simplices of A; simplices are
// filled in (dimension, lexicographic) order and candidate images tried in
// all_refs order.  Stops after `limit` maps (hit_limit set).
struct MapEnumeration {
    std::vector<SMap> maps;
    bool hit_limit = false;
};
MapEnumeration enumerate_maps(const FinSSet& A, const FinSSet& Y,
                              const std::unordered_map<std::string, SimplexRef>& fixed = {},
                              std::size_t limit = static_cast<std::size_t>(-1),
                              const Budgets& budgets = default_budgets());

struct MapSpaceImpl;

// hom(A, Y) truncated at dimension D: n-simplices are simplicial maps
// A × Δⁿ -> Y, with faces/degeneracies by precomposition with 1 × θ.
struct FunctionComplex {
    FinSSet object; // cap = D
    std::shared_ptr<MapSpaceImpl> impl;

    // the underlying map A × Δⁿ -> Y of a non-degenerate n-simplex
    const SMap& element(const std::string& id) const;
    // normal form of an arbitrary map A × Δⁿ -> Y as a simplex of hom(A, Y)
    SimplexRef ref_of(int n, const SMap& m) const;
    // the product A × Δⁿ the level-n elements are defined on
    const ProductResult& level_product(int n) const;
};
FunctionComplex function_complex(const FinSSet& A, const FinSSet& Y, int D,
                                 const Budgets& budgets = default_budgets());

// Ex(X) truncated at D: n-simplices are maps sd(Δⁿ) -> X; natural is the
// map X -> Ex(X) sending x to x ∘ γ.
struct ExResult {
    FinSSet object; // cap = D
    SMap natural;
    std::shared_ptr<MapSpaceImpl> impl;

    const SMap& element(const std::string& id) const;
};
ExResult ex(const FinSSet& X, int D, const Budgets& budgets = default_budgets());

// X ×_Y Y^I with π = evaluation at the far endpoint; to_x is the other
// projection.  When X and Y are Kan, π is the fibration replacement of f.
struct PathSpace {
    FinSSet object; // cap = D
    SMap pi;        // object -> Y
    SMap to_x;      // object -> X
};
PathSpace path_space_replacement(const SMap& f, int D,
                                 const Budgets& budgets = default_budgets());

// Realizations used by lifting problems; boundary_realization(0) is the
// empty object and corner_realization(0) is the single bottom vertex.
FinSSet boundary_realization(int n);
FinSSet prism_realization(int n);  // Δⁿ × Δ¹, triangulated
FinSSet corner_realization(int n); // (∂Δⁿ × Δ¹) ∪ (Δⁿ × {0})

// A lifting problem for f: X -> Y: α on ∂Δⁿ, and (h, β) on the prism
// corner, with f ∘ α equal to (h, β) on ∂Δⁿ × {1}.  The free face Δⁿ × {1}
// is where an extension H must restrict to f ∘ θ.
struct LiftingProblem {
    int n = 0;
    SMap alpha; // ∂Δⁿ -> X
    SMap hb;    // corner -> Y
    SMap f;     // X -> Y
};
Report validate_lifting_problem(const LiftingProblem& p);

struct ExtensionResult {
    bool success = false;
    int k = -1;      // subdivision level of the success
    SMap theta;      // sd^k(Δⁿ) -> X
    SMap homotopy;   // sd^k(Δⁿ × Δ¹) -> Y
    std::string transcript;
    unsigned long long nodes = 0;
};
ExtensionResult extension_search(const LiftingProblem& p, int k_budget,
                                 const Budgets& budgets = default_budgets());

struct WeqVerdict {
    enum class Status { CounterexampleFound, NoObstructionFound };
    Status status = Status::NoObstructionFound;
    std::string witness;
};
WeqVerdict weq_test(const SMap& f, const Budgets& budgets = default_budgets());

} // namespace prosimpl
