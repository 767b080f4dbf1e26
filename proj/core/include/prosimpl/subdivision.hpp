#pragma once

#include <map>

#include "prosimpl/complexes.hpp"
#include "prosimpl/glue.hpp"

namespace prosimpl {

// sd(K) of a simplicial complex is its order complex.
SimplicialComplex sd_complex(const SimplicialComplex& K);

// Chain-id helpers: a vertex of an order complex is "{f}" for a face id f;
// a chain simplex id joins such vertices with "|".
std::vector<std::string> split_chain(const std::string& id);
std::string brace_content(const std::string& vertex_id);

// The simplicial map sd(Δ^m) -> sd(Δⁿ) induced by a monotone vertex map.
SMap sd_of_ordinal(const std::vector<int>& theta, int n);
// Last-vertex map sd(Δⁿ) -> Δⁿ.
SMap lastvertex_smap(int n);
// Last-vertex map on a complex: sd(K) -> K (both as realizations).
SMap lastvertex_complex(const SimplicialComplex& K);

// sd of a general finite simplicial set, computed by gluing sd(Δⁿ) over the
// coequalizer presentation of X by its non-degenerate simplices.
struct SdResult {
    FinSSet sd;
    SMap gamma;                                  // sd(X) -> X
    std::map<std::string, SMap> legs;            // σ -> cocone sd(Δ^{dim σ}) -> sd(X)
    // per non-degenerate sd simplex: a representative chain in a σ-copy
    std::map<std::string, std::pair<std::string, std::string>> srep;
};
SdResult sd_sset(const FinSSet& X, const std::string& prefix = "b",
                 const Budgets& budgets = default_budgets());

// Functoriality: sd(f): sd(X) -> sd(Y).
SMap sd_map(const SMap& f, const SdResult& sdX, const SdResult& sdY);

// π: sd(X) -> BNX, with an isomorphism verdict (Lemma-10 behaviour on
// complexes; not injective in general).
struct PiComparison {
    SMap pi;
    bool isomorphism = false;
};
PiComparison pi_comparison(const FinSSet& X, const SdResult& sdX);
PiComparison pi_comparison(const SimplicialComplex& K);

// Canonical identification of the order-complex realization with the nerve
// of the face poset, for a complex K.
SMap order_complex_vs_nerve(const SimplicialComplex& K);

// A simplicial map of complexes determined by a vertex assignment that is
// monotone on every face.  Realizes to an SMap of the realizations; sd acts
// on it by direct image of chains.
struct ComplexMap {
    SimplicialComplex src, dst;
    std::map<std::string, std::string> on_vertices;
};
SMap realize_complex_map(const ComplexMap& m);
ComplexMap sd_complex_map(const ComplexMap& m);

SimplicialComplex sd_iter(const SimplicialComplex& K, int k);
// γ^k: sd^k(K) -> K on realizations (identity for k = 0).
SMap gamma_chain(const SimplicialComplex& K, int k);

struct SubdivisionTower {
    FinSSet base;
    std::vector<FinSSet> levels;   // sd¹(X) ... sd^k(X)
    std::vector<SMap> gammas;      // sd^t -> sd^{t-1}
};
SubdivisionTower tower(const FinSSet& X, int k, const Budgets& budgets = default_budgets());
SMap gamma_composite(const SubdivisionTower& t); // sd^k(X) -> X

} // namespace prosimpl
