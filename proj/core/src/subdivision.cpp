#include "prosimpl/subdivision.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace prosimpl {

namespace {

// split a "|"-joined id at top level, ignoring separators inside braces
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (c == '|' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "|" : "") << parts[i];
    return os.str();
}

// normal form of a weakly increasing sequence of vertex ids of a complex
// realization whose deduplication is a face id
SimplexRef weak_seq_ref(const std::vector<std::string>& seq) {
    std::vector<std::string> support;
    DegeneracyWord word;
    for (std::size_t p = 0; p < seq.size(); ++p) {
        if (p + 1 < seq.size() && seq[p] == seq[p + 1]) word.push_back(static_cast<int>(p));
        if (support.empty() || support.back() != seq[p]) support.push_back(seq[p]);
    }
    std::reverse(word.begin(), word.end());
    return SimplexRef{word, join(support), static_cast<int>(seq.size()) - 1};
}

const FinSSet& sd_delta(int n) {
    static std::map<int, FinSSet> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, complex_to_sset(order_complex(full_simplex_complex(n)))).first;
    return it->second;
}

const SMap& lv_delta(int n) {
    static std::map<int, SMap> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, lastvertex_smap(n)).first;
    return it->second;
}

std::vector<int> parse_int_face(const std::string& face) {
    std::vector<int> out;
    for (const auto& tok : split_top(face)) out.push_back(std::stoi(tok));
    return out;
}

// vertex map [m - |w|] <- [m] collapsing along a degeneracy word
std::vector<int> collapse_map(const DegeneracyWord& w, int m) {
    std::vector<int> theta(m + 1);
    for (int v = 0; v <= m; ++v) {
        int x = v;
        for (int j : w) // s_{j1}∘...∘s_{jt} acts as σ_{j1} first on points
            if (x > j) --x;
        theta[v] = x;
    }
    return theta;
}

std::vector<int> face_vertex_map(int n, int i) {
    std::vector<int> theta;
    for (int v = 0; v <= n; ++v)
        if (v != i) theta.push_back(v);
    return theta;
}

} // namespace

SimplicialComplex sd_complex(const SimplicialComplex& K) { return order_complex(K); }

std::vector<std::string> split_chain(const std::string& id) { return split_top(id); }

std::string brace_content(const std::string& vertex_id) {
    if (vertex_id.size() < 2 || vertex_id.front() != '{' || vertex_id.back() != '}')
        throw MalformedExpression("not an order-complex vertex: " + vertex_id);
    return vertex_id.substr(1, vertex_id.size() - 2);
}

SMap sd_of_ordinal(const std::vector<int>& theta, int n) {
    int m = static_cast<int>(theta.size()) - 1;
    for (std::size_t p = 0; p + 1 < theta.size(); ++p)
        if (theta[p] > theta[p + 1]) throw ValidationError("ordinal map not monotone");
    for (int t : theta)
        if (t < 0 || t > n) throw ValidationError("ordinal map value out of range");
    SMap f;
    f.source = sd_delta(m);
    f.target = sd_delta(n);
    for (const auto& level : f.source.simplices) {
        for (const auto& id : level) {
            std::vector<std::string> images;
            for (const auto& v : split_top(id)) {
                std::set<int> img;
                for (int x : parse_int_face(brace_content(v))) img.insert(theta[x]);
                std::vector<std::string> toks;
                for (int x : img) toks.push_back(std::to_string(x));
                images.push_back("{" + join(toks) + "}");
            }
            f.on[id] = weak_seq_ref(images);
        }
    }
    return f;
}

SMap lastvertex_smap(int n) {
    SMap f;
    f.source = sd_delta(n);
    f.target = standard_simplex(n);
    for (const auto& level : f.source.simplices) {
        for (const auto& id : level) {
            std::vector<int> seq;
            for (const auto& v : split_top(id)) {
                const auto face = parse_int_face(brace_content(v));
                seq.push_back(*std::max_element(face.begin(), face.end()));
            }
            f.on[id] = delta_ref(n, seq);
        }
    }
    return f;
}

SMap lastvertex_complex(const SimplicialComplex& K) {
    SMap f;
    f.source = complex_to_sset(order_complex(K));
    f.target = complex_to_sset(K);
    for (const auto& level : f.source.simplices) {
        for (const auto& id : level) {
            std::vector<std::string> seq;
            for (const auto& v : split_top(id)) {
                // faces are joined in vertex order, so the last token is
                // the last vertex
                seq.push_back(split_top(brace_content(v)).back());
            }
            f.on[id] = weak_seq_ref(seq);
        }
    }
    return f;
}

SdResult sd_sset(const FinSSet& X, const std::string& prefix, const Budgets& budgets) {
    if (!X.complete()) throw ValidationError("sd of a truncated object");
    std::vector<FinSSet> objects;
    std::vector<GlueArrow> arrows;
    std::vector<std::string> sigma_of; // object index -> simplex id ("" = relation copy)
    std::map<std::string, int> index;
    std::map<std::string, SMap> chars;

    for (int n = 0; n <= X.dim(); ++n) {
        for (const auto& id : X.simplices[n]) {
            index[id] = static_cast<int>(objects.size());
            objects.push_back(sd_delta(n));
            sigma_of.push_back(id);
            chars.emplace(id, characteristic_map(X, id));
        }
    }
    for (int n = 1; n <= X.dim(); ++n) {
        for (const auto& id : X.simplices[n]) {
            for (int i = 0; i <= n; ++i) {
                const SimplexRef& fi = X.faces.at(id)[i];
                int rel = static_cast<int>(objects.size());
                objects.push_back(sd_delta(n - 1));
                sigma_of.push_back("");
                arrows.push_back(GlueArrow{rel, index.at(id), sd_of_ordinal(face_vertex_map(n, i), n)});
                arrows.push_back(GlueArrow{
                    rel, index.at(fi.base),
                    sd_of_ordinal(collapse_map(fi.word, n - 1), X.dimension_of(fi.base))});
            }
        }
    }

    GlueResult r = glue(objects, arrows, prefix, budgets);

    SdResult out;
    out.sd = std::move(r.object);
    for (const auto& [sigma, o] : index) out.legs.emplace(sigma, r.cocone[o]);

    // pick, per non-degenerate output simplex, a representative chain in a
    // σ-copy; every non-degenerate class contains one
    for (int o = 0; o < static_cast<int>(objects.size()); ++o) {
        if (sigma_of[o].empty()) continue;
        const SMap& leg = r.cocone[o];
        for (const auto& level : objects[o].simplices) {
            for (const auto& elem : level) {
                const SimplexRef img = leg.on.at(elem);
                if (!img.degenerate() && !out.srep.count(img.base))
                    out.srep[img.base] = {sigma_of[o], elem};
            }
        }
    }

    out.gamma.source = out.sd;
    out.gamma.target = X;
    for (const auto& level : out.sd.simplices) {
        for (const auto& id : level) {
            const auto& [sigma, elem] = out.srep.at(id);
            int p = X.dimension_of(sigma);
            out.gamma.on[id] = chars.at(sigma).apply(lv_delta(p).on.at(elem));
        }
    }
    return out;
}

SMap sd_map(const SMap& f, const SdResult& sdX, const SdResult& sdY) {
    SMap out;
    out.source = sdX.sd;
    out.target = sdY.sd;
    for (const auto& level : sdX.sd.simplices) {
        for (const auto& id : level) {
            const auto& [sigma, elem] = sdX.srep.at(id);
            int p = f.source.dimension_of(sigma);
            const SimplexRef& img = f.on.at(sigma);
            SMap s = sd_of_ordinal(collapse_map(img.word, p), p - static_cast<int>(img.word.size()));
            out.on[id] = sdY.legs.at(img.base).apply(s.on.at(elem));
        }
    }
    return out;
}

PiComparison pi_comparison(const FinSSet& X, const SdResult& sdX) {
    FinCategory P = face_poset(X);
    FinSSet BNX = nerve(P);
    PiComparison out;
    out.pi.source = sdX.sd;
    out.pi.target = BNX;
    for (const auto& level : sdX.sd.simplices) {
        for (const auto& id : level) {
            const auto& [sigma, elem] = sdX.srep.at(id);
            int p = X.dimension_of(sigma);
            const SMap& chi = characteristic_map(X, sigma);
            std::vector<std::string> objs;
            for (const auto& v : split_chain(elem)) {
                std::vector<int> face = parse_int_face(brace_content(v));
                objs.push_back(chi.apply(delta_ref(p, face)).base);
            }
            std::vector<std::string> mors;
            for (std::size_t q = 1; q < objs.size(); ++q)
                mors.push_back(objs[q - 1] == objs[q] ? P.identity.at(objs[q])
                                                      : objs[q - 1] + "<=" + objs[q]);
            out.pi.on[id] = nerve_string_ref(P, objs.front(), mors);
        }
    }
    out.isomorphism = is_isomorphism(out.pi);
    return out;
}

PiComparison pi_comparison(const SimplicialComplex& K) {
    FinSSet X = complex_to_sset(K);
    return pi_comparison(X, sd_sset(X));
}

SMap order_complex_vs_nerve(const SimplicialComplex& K) {
    FinSSet X = complex_to_sset(K);
    FinCategory P = face_poset(X);
    SMap f;
    f.source = complex_to_sset(order_complex(K));
    f.target = nerve(P);
    for (const auto& level : f.source.simplices) {
        for (const auto& id : level) {
            std::vector<std::string> objs;
            for (const auto& v : split_chain(id)) objs.push_back(brace_content(v));
            std::vector<std::string> mors;
            for (std::size_t q = 1; q < objs.size(); ++q)
                mors.push_back(objs[q - 1] + "<=" + objs[q]);
            f.on[id] = nerve_string_ref(P, objs.front(), mors);
        }
    }
    return f;
}

SMap realize_complex_map(const ComplexMap& m) {
    SMap f;
    f.source = complex_to_sset(m.src);
    f.target = complex_to_sset(m.dst);
    for (const auto& face : m.src.faces()) {
        std::vector<std::string> images;
        for (const auto& v : face) images.push_back(m.on_vertices.at(v));
        for (std::size_t p = 0; p + 1 < images.size(); ++p)
            if (m.dst.vertex_index(images[p]) > m.dst.vertex_index(images[p + 1]))
                throw ValidationError("complex map not monotone on face " + face_id(face));
        SimplexRef r = weak_seq_ref(images);
        if (!f.target.has(r.base))
            throw ValidationError("complex map image is not a face: " + r.base);
        f.on[face_id(face)] = r;
    }
    return f;
}

ComplexMap sd_complex_map(const ComplexMap& m) {
    ComplexMap out;
    out.src = order_complex(m.src);
    out.dst = order_complex(m.dst);
    for (const auto& v : out.src.vertices) {
        std::vector<std::string> img;
        for (const auto& x : split_top(brace_content(v))) img.push_back(m.on_vertices.at(x));
        std::sort(img.begin(), img.end(), [&](const std::string& a, const std::string& b) {
            return m.dst.vertex_index(a) < m.dst.vertex_index(b);
        });
        img.erase(std::unique(img.begin(), img.end()), img.end());
        out.on_vertices[v] = "{" + join(img) + "}";
    }
    return out;
}

SimplicialComplex sd_iter(const SimplicialComplex& K, int k) {
    SimplicialComplex cur = K;
    for (int j = 0; j < k; ++j) cur = sd_complex(cur);
    return cur;
}

SMap gamma_chain(const SimplicialComplex& K, int k) {
    SMap g = identity_map(complex_to_sset(K));
    SimplicialComplex cur = K;
    for (int j = 0; j < k; ++j) {
        g = compose(g, lastvertex_complex(cur));
        cur = sd_complex(cur);
    }
    return g;
}

SubdivisionTower tower(const FinSSet& X, int k, const Budgets& budgets) {
    SubdivisionTower t;
    t.base = X;
    FinSSet cur = X;
    for (int level = 1; level <= k; ++level) {
        SdResult s = sd_sset(cur, "b" + std::to_string(level), budgets);
        t.levels.push_back(s.sd);
        t.gammas.push_back(s.gamma);
        cur = s.sd;
    }
    return t;
}

SMap gamma_composite(const SubdivisionTower& t) {
    if (t.gammas.empty()) return identity_map(t.base);
    SMap g = t.gammas.front();
    for (std::size_t i = 1; i < t.gammas.size(); ++i) g = compose(g, t.gammas[i]);
    return g;
}

} // namespace prosimpl
