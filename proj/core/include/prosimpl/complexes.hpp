#pragma once

#include <string>
#include <vector>

#include "prosimpl/category.hpp"
#include "prosimpl/sset.hpp"

namespace prosimpl {

// A finite simplicial complex: totally ordered vertices, faces = non-empty
// subsets of the facets.  Face ids are vertex ids joined by "|" in vertex
// order; order_complex wraps its vertices in braces so iterated
// subdivisions stay unambiguous.
struct SimplicialComplex {
    std::vector<std::string> vertices;        // in order
    std::vector<std::vector<std::string>> facets; // vertex-sorted subsets

    int vertex_index(const std::string& v) const;
    void sort_facet(std::vector<std::string>& f) const;
    // all faces, sorted by (dimension, lex on index tuples)
    std::vector<std::vector<std::string>> faces() const;
};

Report validate_complex(const SimplicialComplex& K);
std::string face_id(const std::vector<std::string>& face);

FinSSet complex_to_sset(const SimplicialComplex& K);

// Face poset NX of a simplicial set: objects = non-degenerate simplices,
// σ ≤ τ iff σ lies in the subcomplex generated by τ (face-closure
// reachability).
FinCategory face_poset(const FinSSet& X);

SimplicialComplex order_complex(const SimplicialComplex& K);

// Functor data on NL: an order-compatible assignment of target refs to the
// non-degenerate simplices of a complex realization.
using FunctorData = std::unordered_map<std::string, SimplexRef>;

FunctorData functor_of_map(const SMap& f);
// Unique simplicial map restricting to F; throws ValidationError naming the
// violating poset pair when F is incoherent.
SMap realize_functor(const FinSSet& L, const FinSSet& X, const FunctorData& F);

// Corollary-7 data: the monotone map g_*: NK -> NL together with the
// codegeneracy witnesses s_σ.
struct InducedPosetMap {
    std::unordered_map<std::string, std::string> object_map; // σ -> d_σ
    std::unordered_map<std::string, DegeneracyWord> witness;  // σ -> s_σ
    bool monotone = false;
};
InducedPosetMap induced_poset_map(const SMap& g);

struct CompositeRealization {
    SMap composite;
    bool verdict = false; // realize(NK, f̃ ∘ g_*) == f ∘ g
};
CompositeRealization compose_realizations(const SMap& g, const SMap& f);

// Fixture complexes.
SimplicialComplex full_simplex_complex(int n);
SimplicialComplex boundary_complex(int n);
SimplicialComplex horn_complex(int n, int k);
SimplicialComplex hexagon_complex();
SimplicialComplex torus_complex();         // 7-vertex triangulation
SimplicialComplex rp2_complex();           // 6-vertex triangulation
// Triangulated prism Δⁿ × Δ¹ on vertices (i, ε), and the lifting-problem
// corner (∂Δⁿ × Δ¹) ∪ (Δⁿ × {0}) inside it.
SimplicialComplex prism_complex(int n);
SimplicialComplex prism_corner_complex(int n);

} // namespace prosimpl
