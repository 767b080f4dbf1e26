#include "prosimpl/complexes.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace prosimpl {

int SimplicialComplex::vertex_index(const std::string& v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw ValidationError("unknown vertex: " + v);
    return static_cast<int>(it - vertices.begin());
}

void SimplicialComplex::sort_facet(std::vector<std::string>& f) const {
    std::sort(f.begin(), f.end(),
              [&](const std::string& a, const std::string& b) {
                  return vertex_index(a) < vertex_index(b);
              });
}

std::vector<std::vector<std::string>> SimplicialComplex::faces() const {
    std::set<std::vector<int>> idx_faces;
    for (const auto& facet : facets) {
        std::vector<int> idx;
        for (const auto& v : facet) idx.push_back(vertex_index(v));
        std::sort(idx.begin(), idx.end());
        int m = static_cast<int>(idx.size());
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::vector<int> sub;
            for (int b = 0; b < m; ++b)
                if (mask & (1 << b)) sub.push_back(idx[b]);
            idx_faces.insert(sub);
        }
    }
    std::vector<std::vector<int>> ordered(idx_faces.begin(), idx_faces.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<std::vector<std::string>> out;
    for (const auto& f : ordered) {
        std::vector<std::string> vs;
        for (int i : f) vs.push_back(vertices[i]);
        out.push_back(std::move(vs));
    }
    return out;
}

Report validate_complex(const SimplicialComplex& K) {
    Report rep;
    std::set<std::string> seen(K.vertices.begin(), K.vertices.end());
    if (seen.size() != K.vertices.size()) rep.push_back({"vertices", "duplicate vertex id"});
    std::set<std::string> covered;
    for (const auto& f : K.facets) {
        if (f.empty()) rep.push_back({"facets", "empty facet"});
        std::set<std::string> fs(f.begin(), f.end());
        if (fs.size() != f.size()) rep.push_back({face_id(f), "repeated vertex in facet"});
        for (const auto& v : f) {
            if (!seen.count(v))
                rep.push_back({face_id(f), "facet uses unknown vertex " + v});
            else
                covered.insert(v);
        }
    }
    for (const auto& v : K.vertices)
        if (!covered.count(v)) rep.push_back({v, "vertex not in any face"});
    return rep;
}

std::string face_id(const std::vector<std::string>& face) {
    std::ostringstream os;
    for (std::size_t i = 0; i < face.size(); ++i) os << (i ? "|" : "") << face[i];
    return os.str();
}

FinSSet complex_to_sset(const SimplicialComplex& K) {
    Report rep = validate_complex(K);
    if (!rep.empty()) throw ValidationError("invalid complex: " + rep.front().message);
    FinSSet X;
    for (const auto& f : K.faces()) {
        int n = static_cast<int>(f.size()) - 1;
        std::vector<SimplexRef> fs;
        if (n >= 1) {
            for (int i = 0; i <= n; ++i) {
                std::vector<std::string> sub = f;
                sub.erase(sub.begin() + i);
                fs.push_back(SimplexRef{{}, face_id(sub), n - 1});
            }
        }
        X.add_simplex(n, face_id(f), std::move(fs));
    }
    X.reindex();
    return X;
}

FinCategory face_poset(const FinSSet& X) {
    if (!X.complete()) throw ValidationError("face poset of a truncated object");
    // σ ≤ τ iff σ is reachable from τ through iterated face bases
    std::vector<std::string> objects;
    for (const auto& level : X.simplices)
        for (const auto& id : level) objects.push_back(id);
    std::vector<std::pair<std::string, std::string>> rel;
    for (const auto& tau : objects) {
        std::set<std::string> closure;
        std::queue<std::string> q;
        q.push(tau);
        while (!q.empty()) {
            std::string cur = q.front();
            q.pop();
            auto it = X.faces.find(cur);
            if (it == X.faces.end()) continue;
            for (const auto& f : it->second)
                if (closure.insert(f.base).second) q.push(f.base);
        }
        for (const auto& sigma : closure)
            if (sigma != tau) rel.emplace_back(sigma, tau);
    }
    return poset_category(objects, rel);
}

SimplicialComplex order_complex(const SimplicialComplex& K) {
    auto faces = K.faces(); // already (dimension, lex) ordered
    SimplicialComplex O;
    std::map<std::string, int> pos;
    for (const auto& f : faces) {
        std::string v = "{" + face_id(f) + "}";
        pos[v] = static_cast<int>(O.vertices.size());
        O.vertices.push_back(v);
    }
    // maximal chains: per facet, all single-vertex-extension towers
    std::set<std::vector<std::string>> chain_set;
    for (const auto& facet : K.facets) {
        std::vector<std::string> f = facet;
        K.sort_facet(f);
        std::vector<int> perm(f.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        do {
            std::vector<std::string> chain;
            std::vector<std::string> cur;
            for (int p : perm) {
                cur.push_back(f[p]);
                std::vector<std::string> sorted = cur;
                K.sort_facet(sorted);
                chain.push_back("{" + face_id(sorted) + "}");
            }
            chain_set.insert(chain);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (const auto& c : chain_set) {
        std::vector<std::string> facet = c;
        std::sort(facet.begin(), facet.end(),
                  [&](const std::string& a, const std::string& b) { return pos[a] < pos[b]; });
        O.facets.push_back(facet);
    }
    std::sort(O.facets.begin(), O.facets.end());
    return O;
}

FunctorData functor_of_map(const SMap& f) {
    FunctorData F;
    for (const auto& [id, ref] : f.on) F[id] = ref;
    return F;
}

SMap realize_functor(const FinSSet& L, const FinSSet& X, const FunctorData& F) {
    SMap f;
    f.source = L;
    f.target = X;
    for (const auto& level : L.simplices) {
        for (const auto& id : level) {
            auto it = F.find(id);
            if (it == F.end()) throw ValidationError("functor data missing simplex " + id);
            f.on[id] = it->second;
        }
    }
    // coherence: F(d_i σ) must be the i-th face of F(σ)
    for (const auto& level : L.simplices) {
        for (const auto& id : level) {
            int n = L.dimension_of(id);
            if (n == 0) continue;
            for (int i = 0; i <= n; ++i) {
                const SimplexRef& fi = L.faces.at(id)[i];
                if (fi.degenerate())
                    throw ValidationError("source is not a complex realization at " + id);
                if (!(apply_face(X, f.on.at(id), i) == f.on.at(fi.base)))
                    throw ValidationError("incoherent functor data on pair (" + fi.base + ", " +
                                          id + ")");
            }
        }
    }
    return f;
}

InducedPosetMap induced_poset_map(const SMap& g) {
    InducedPosetMap out;
    for (const auto& [id, ref] : g.on) {
        out.object_map[id] = ref.base;
        out.witness[id] = ref.word;
    }
    // monotonicity over face pairs
    out.monotone = true;
    for (const auto& level : g.source.simplices) {
        for (const auto& id : level) {
            int n = g.source.dimension_of(id);
            if (n == 0) continue;
            for (const auto& fr : g.source.faces.at(id)) {
                // d_fr.base must lie in the face closure of d_id
                std::set<std::string> closure{out.object_map.at(id)};
                std::queue<std::string> q;
                q.push(out.object_map.at(id));
                bool found = closure.count(out.object_map.at(fr.base)) > 0;
                while (!q.empty() && !found) {
                    std::string cur = q.front();
                    q.pop();
                    auto it = g.target.faces.find(cur);
                    if (it == g.target.faces.end()) continue;
                    for (const auto& f : it->second) {
                        if (f.base == out.object_map.at(fr.base)) {
                            found = true;
                            break;
                        }
                        if (closure.insert(f.base).second) q.push(f.base);
                    }
                }
                if (!found) out.monotone = false;
            }
        }
    }
    return out;
}

CompositeRealization compose_realizations(const SMap& g, const SMap& f) {
    CompositeRealization out;
    out.composite = compose(f, g);
    InducedPosetMap gstar = induced_poset_map(g);
    FunctorData comp;
    for (const auto& level : g.source.simplices)
        for (const auto& id : level)
            comp[id] = apply_word(gstar.witness.at(id), f.on.at(gstar.object_map.at(id)));
    SMap realized = realize_functor(g.source, f.target, comp);
    out.verdict = same_assignment(realized, out.composite);
    return out;
}

// --- fixtures -----------------------------------------------------------------

namespace {

SimplicialComplex numbered_complex(int nverts, const std::vector<std::vector<int>>& facets,
                                   int first = 0) {
    SimplicialComplex K;
    for (int i = 0; i < nverts; ++i) K.vertices.push_back(std::to_string(first + i));
    for (const auto& f : facets) {
        std::vector<std::string> vs;
        for (int v : f) vs.push_back(std::to_string(v));
        K.sort_facet(vs);
        K.facets.push_back(vs);
    }
    return K;
}

} // namespace

SimplicialComplex full_simplex_complex(int n) {
    std::vector<int> all(n + 1);
    for (int i = 0; i <= n; ++i) all[i] = i;
    return numbered_complex(n + 1, {all});
}

SimplicialComplex boundary_complex(int n) {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i <= n; ++i) {
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != i) f.push_back(v);
        facets.push_back(f);
    }
    return numbered_complex(n + 1, facets);
}

SimplicialComplex horn_complex(int n, int k) {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i <= n; ++i) {
        if (i == k) continue;
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != i) f.push_back(v);
        facets.push_back(f);
    }
    return numbered_complex(n + 1, facets);
}

SimplicialComplex hexagon_complex() {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 6; ++i) facets.push_back({i, (i + 1) % 6});
    return numbered_complex(6, facets);
}

SimplicialComplex torus_complex() {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 7; ++i) {
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return numbered_complex(7, facets);
}

SimplicialComplex rp2_complex() {
    return numbered_complex(6,
                            {{1, 2, 3},
                             {1, 3, 4},
                             {1, 4, 5},
                             {1, 5, 6},
                             {1, 2, 6},
                             {2, 3, 5},
                             {3, 4, 6},
                             {2, 4, 5},
                             {3, 5, 6},
                             {2, 4, 6}},
                            1);
}

namespace {

std::string prism_vertex(int i, int e) { return std::to_string(i) + "." + std::to_string(e); }

// maximal chains in the poset [n] x [1]: shuffles (0,0)..(i,0),(i,1)..(n,1)
std::vector<std::vector<std::string>> prism_facets_over(const std::vector<int>& verts) {
    std::vector<std::vector<std::string>> out;
    int m = static_cast<int>(verts.size()) - 1;
    for (int split = 0; split <= m; ++split) {
        std::vector<std::string> f;
        for (int p = 0; p <= split; ++p) f.push_back(prism_vertex(verts[p], 0));
        for (int p = split; p <= m; ++p) f.push_back(prism_vertex(verts[p], 1));
        out.push_back(f);
    }
    return out;
}

SimplicialComplex prism_base(int n) {
    SimplicialComplex K;
    for (int i = 0; i <= n; ++i)
        for (int e = 0; e <= 1; ++e) K.vertices.push_back(prism_vertex(i, e));
    return K;
}

} // namespace

SimplicialComplex prism_complex(int n) {
    SimplicialComplex K = prism_base(n);
    std::vector<int> all(n + 1);
    for (int i = 0; i <= n; ++i) all[i] = i;
    for (auto& f : prism_facets_over(all)) K.facets.push_back(f);
    return K;
}

SimplicialComplex prism_corner_complex(int n) {
    SimplicialComplex K = prism_base(n);
    // Δⁿ × {0}
    std::vector<std::string> bottom;
    for (int i = 0; i <= n; ++i) bottom.push_back(prism_vertex(i, 0));
    K.facets.push_back(bottom);
    // ∂Δⁿ × Δ¹
    for (int omit = 0; omit <= n && n >= 1; ++omit) {
        std::vector<int> verts;
        for (int i = 0; i <= n; ++i)
            if (i != omit) verts.push_back(i);
        for (auto& f : prism_facets_over(verts)) K.facets.push_back(f);
    }
    // n = 0 leaves the top vertex uncovered; drop unused vertices
    std::set<std::string> used;
    for (const auto& f : K.facets)
        for (const auto& v : f) used.insert(v);
    std::vector<std::string> kept;
    for (const auto& v : K.vertices)
        if (used.count(v)) kept.push_back(v);
    K.vertices = std::move(kept);
    return K;
}

} // namespace prosimpl
