#pragma once

#include <memory>

#include "prosimpl/complexes.hpp"
#include "prosimpl/glue.hpp"
#include "prosimpl/mapspace.hpp"

namespace prosimpl {

// An I-diagram of finite simplicial sets is the same data as a gluing
// diagram over a finite category; validate_diagram checks functoriality.
using Diagram = DiagramOverCategory;

// The arrow X(a), with identities materialized on demand.
SMap diagram_arrow(const Diagram& X, const std::string& morphism);

// A pro-map (α, θ): a functor α: J -> I together with component maps
// θ_j: X(α(j)) -> Y(j), natural in j.  X is a diagram over I, Y over J.
struct ProMap {
    Functor alpha;
    Diagram X, Y;
    std::map<std::string, SMap> theta; // per object j of J
};
Report validate_promap(const ProMap& p);

// An identity-shaped pro-map from a levelwise inclusion X(i) ⊆ Y(i) over a
// common index category.
ProMap inclusion_promap(const Diagram& X, const Diagram& Y,
                        const std::map<std::string, SMap>& incl);

// A test object standing in for "injective fibrant Z": either a finite
// simplicial set flagged assume-fibrant, or a finite groupoid whose nerve
// is enumerated per dimension.
struct FibrantTestObject {
    std::string name;
    FinSSet fixed;
    std::optional<FinCategory> groupoid;

    // nerve truncated at D for groupoids; the fixed object otherwise
    // (which must be complete or truncated no lower than D).
    FinSSet materialize(int D) const;
};
FibrantTestObject fibrant_sset(const std::string& name, FinSSet X);
FibrantTestObject fibrant_groupoid(const std::string& name, FinCategory G);

// An n-simplex of the homotopy colimit of i -> hom(X(i), Z): a composable
// string α: [n] -> I (identities allowed) and a map τ: X(α(n)) × Δⁿ -> Z.
struct HocolimSimplex {
    std::vector<std::string> chain; // n morphism ids; empty for a vertex
    std::string at;                 // α(n)
    SMap tau;
};

struct HocolimImpl;

struct Hocolim {
    FinSSet object;      // cap = D
    SMap to_nerve;       // projection (α, τ) -> α into the nerve of the index
    std::shared_ptr<HocolimImpl> impl;

    const HocolimSimplex& element(const std::string& id) const;
    // payload of an arbitrary simplex reference (degenerate allowed)
    HocolimSimplex element_of_ref(const SimplexRef& r) const;
    // normal form of a well-formed (chain, τ) pair, chain length <= D
    SimplexRef ref_of(const HocolimSimplex& s) const;
    // the product X(obj) × Δⁿ used at level n over obj
    const ProductResult& level_product(const std::string& obj, int n) const;
    // the materialized test object all τ map into
    const FinSSet& test_object() const;
};
Hocolim hocolim(const Diagram& X, const FibrantTestObject& Z, int D,
                const Budgets& budgets = default_budgets());

// Nerve of the category with objects (i, g: X(i) -> Z) and morphisms
// a: i -> i' such that g = g' ∘ X(a); truncated at D.
struct SliceNerve {
    FinCategory category;
    FinSSet object;                      // nerve, cap = D
    std::map<std::string, SMap> vertex_maps; // slice object id -> g
};
SliceNerve slice_nerve(const Diagram& X, const FibrantTestObject& Z, int D,
                       const Budgets& budgets = default_budgets());

// Side-by-side counts of the two homotopy colimit models; a reported
// diagnostic, not an assumed isomorphism.
struct HocolimComparison {
    std::vector<std::size_t> hocolim_counts, slice_counts;
    bool equal = false;
};
HocolimComparison compare_hocolim_models(const Diagram& X, const FibrantTestObject& Z,
                                         int D, const Budgets& budgets = default_budgets());

// The map hocolim(Y over J) -> hocolim(X over I) induced by a pro-map:
// (β, τ) -> (α∘β, τ∘(θ_{β(n)} × 1)).
struct InducedHocolim {
    Hocolim source; // over Y and J
    Hocolim target; // over X and I
    SMap map;
};
InducedHocolim induced_hocolim_map(const ProMap& p, const FibrantTestObject& Z, int D,
                                   const Budgets& budgets = default_budgets());

// Pro-equivalence check relative to a family of test objects: the nerve map
// B(J) -> B(I) and every induced homotopy colimit map must pass weq_test.
struct ProEqVerdict {
    enum class Status { NotProEquivalence, NoObstructionFound };
    Status status = Status::NoObstructionFound;
    std::string witness;             // first failing check
    std::vector<std::string> checks; // every check performed, in order
};
ProEqVerdict pro_equivalence_check(const ProMap& p,
                                   const std::vector<FibrantTestObject>& Zs, int D,
                                   const Budgets& budgets = default_budgets());

// Colimit of an ω: |K| -> hocolim(X, Z, D) over the face poset of K: glues
// X(α_σ(n)) × Δⁿ over the non-degenerate simplices σ of K, and assembles
// f_ω: L_K -> Z so that f_ω restricted along each cocone leg is τ_σ.
struct LKRealization {
    FinSSet object;                     // L_K(X)
    SMap f;                             // f_ω: L_K(X) -> Z
    std::map<std::string, SMap> cocone; // per non-degenerate simplex of |K|
    // representative of each output simplex: the simplex σ of K it came
    // from and the member of X(α_σ(n)) × Δ^{dim σ} that maps onto it
    std::map<std::string, std::pair<std::string, std::string>> rep;
    bool verified = false;              // every triangle re-expansion checked
};
LKRealization realize_LK(const Hocolim& H, const SimplicialComplex& K,
                         const SMap& omega, const Budgets& budgets = default_budgets());
// FunctorData variant: incoherent data raises an error naming the bad
// poset pair (via realize_functor).
LKRealization realize_LK(const Hocolim& H, const SimplicialComplex& K,
                         const FunctorData& omega,
                         const Budgets& budgets = default_budgets());

// A corner frame: inclusions K ⊂ K' and L ⊂ L' of finite complexes joined
// by vertical maps K -> L and K' -> L' making the square commute.
struct CornerFrame {
    SimplicialComplex K, Kp, L, Lp;
    ComplexMap k_in_kp, l_in_lp, k_in_l, kp_in_lp;
};
// The canonical family: K = ∂Δⁿ ⊂ K' = Δⁿ over L = (∂Δⁿ×Δ¹) ∪ (Δⁿ×{0})
// ⊂ L' = Δⁿ×Δ¹, with the vertical maps landing in the ε = 1 end.
CornerFrame standard_corner_frame(int n);

// A corner extension problem for a levelwise inclusion X ⊆ Y over I:
// ω on |K| into hocolim(Y, Z, D) and β on |L| into hocolim(X, Z, D),
// agreeing on K after restriction to X.
struct CornerProblem {
    Diagram X, Y;
    std::map<std::string, SMap> incl; // per object, a mono X(i) -> Y(i)
    CornerFrame frame;
    FibrantTestObject Z;
    int D = 0;
    SMap omega; // |K| -> hocolim(Y, Z, D)
    SMap beta;  // |L| -> hocolim(X, Z, D)
};

// Searches for an extension of (ω, β) to (K', L') after k-fold subdivision,
// k = 0..sd_budget.  At each level the pushout L_K Y ∪_{L_K X} L_L X and
// its map to Z are rebuilt from the subdivided data; a success also yields
// the extended pushout and its lift to Z.
struct CornerResult {
    bool success = false;
    int k = -1;
    SMap omega_ext;  // |sd^k K'| -> hocolim(Y, Z, D)
    SMap beta_ext;   // |sd^k L'| -> hocolim(X, Z, D)
    FinSSet pushout; // L_K Y ∪_{L_K X} L_L X at the final level searched
    SMap to_z;       // its map to Z
    std::string transcript;
};
CornerResult corner_extension_test(const CornerProblem& p, int sd_budget,
                                   const Budgets& budgets = default_budgets());

// The corner (∂Δⁿ × Y_i) ∪ (Δⁿ × X_i) inside Δⁿ × Y_i.
struct FrameCorner {
    ProductResult prod; // Δⁿ × Y_i
    FinSSet corner;
    SMap include; // corner -> prod.object
};
FrameCorner frame_corner(int n, const FinSSet& Yi, const SMap& incl_i,
                         const Budgets& budgets = default_budgets());

// A lifting problem over a single index i of a left-filtered category:
// f is defined on the corner of Δⁿ × Y_i and a full lift Δⁿ × Y_j -> Z is
// sought after refining along some α: j -> i.
struct RefinementProblem {
    Diagram X, Y;
    std::map<std::string, SMap> incl;
    std::string index; // i
    int n = 0;
    FibrantTestObject Z;
    SMap f; // frame_corner(n, Y(i), incl(i)).corner -> Z
};
struct RefinementResult {
    bool solved = false;
    std::string alpha; // morphism j -> i that solves the problem
    SMap lift;         // Δⁿ × Y_j -> Z
    std::string transcript;
};
RefinementResult filtered_refinement_solve(const RefinementProblem& p,
                                           const Budgets& budgets = default_budgets());

// Diagnostic: the actual filtered colimit of i -> hom(X(i), Z), truncated
// at D, computed by the gluing engine over the restriction maps.
FinSSet colim_hom(const Diagram& X, const FibrantTestObject& Z, int D,
                  const Budgets& budgets = default_budgets());

} // namespace prosimpl
