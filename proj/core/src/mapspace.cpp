#include "prosimpl/mapspace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "prosimpl/assemble.hpp"
#include "prosimpl/homology.hpp"

namespace prosimpl {

namespace {

using Fixed = std::unordered_map<std::string, SimplexRef>;

// Backtracking core.  Visits complete maps in deterministic order; the
// callback returns true to stop the search.
struct MapSearch {
    const FinSSet& A;
    const FinSSet& Y;
    const Fixed& fixed;
    const Budgets& budgets;
    unsigned long long& nodes;

    std::vector<std::string> order;                       // (dim, lex)
    std::map<int, std::vector<SimplexRef>> candidates;    // per dimension
    std::unordered_map<std::string, SimplexRef> assign;

    MapSearch(const FinSSet& a, const FinSSet& y, const Fixed& fx, const Budgets& b,
              unsigned long long& n)
        : A(a), Y(y), fixed(fx), budgets(b), nodes(n) {
        if (!Y.complete() && A.dim() > Y.cap)
            throw ValidationError("map target is truncated below the source dimension");
        for (const auto& level : A.simplices)
            for (const auto& id : level) order.push_back(id);
    }

    const std::vector<SimplexRef>& cands(int d) {
        auto it = candidates.find(d);
        if (it == candidates.end()) it = candidates.emplace(d, all_refs(Y, d)).first;
        return it->second;
    }

    bool consistent(const std::string& id, int d, const SimplexRef& img) {
        if (d == 0) return true;
        const auto& fs = A.faces.at(id);
        for (int i = 0; i <= d; ++i) {
            const SimplexRef expected = apply_word(fs[i].word, assign.at(fs[i].base));
            if (!(apply_face(Y, img, i) == expected)) return false;
        }
        return true;
    }

    template <typename Cb>
    bool run(std::size_t pos, Cb&& cb) {
        if (pos == order.size()) return cb(assign);
        const std::string& id = order[pos];
        const int d = A.dimension_of(id);
        auto fx = fixed.find(id);
        if (fx != fixed.end()) {
            if (++nodes > budgets.search_nodes) throw BudgetError("map search node budget exceeded");
            if (!consistent(id, d, fx->second)) return false;
            assign[id] = fx->second;
            bool stop = run(pos + 1, cb);
            assign.erase(id);
            return stop;
        }
        for (const SimplexRef& img : cands(d)) {
            if (++nodes > budgets.search_nodes) throw BudgetError("map search node budget exceeded");
            if (!consistent(id, d, img)) continue;
            assign[id] = img;
            if (run(pos + 1, cb)) {
                assign.erase(id);
                return true;
            }
            assign.erase(id);
        }
        return false;
    }
};

MapEnumeration enumerate_impl(const FinSSet& A, const FinSSet& Y, const Fixed& fixed,
                              std::size_t limit, const Budgets& budgets,
                              unsigned long long& nodes) {
    MapEnumeration out;
    MapSearch s(A, Y, fixed, budgets, nodes);
    s.run(0, [&](const std::unordered_map<std::string, SimplexRef>& assign) {
        SMap m;
        m.source = A;
        m.target = Y;
        m.on = assign;
        out.maps.push_back(std::move(m));
        if (out.maps.size() >= limit) {
            out.hit_limit = true;
            return true;
        }
        return false;
    });
    return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? std::string(1, sep) : "") << parts[i];
    return os.str();
}

std::vector<int> coface_map(int n, int i) {
    std::vector<int> theta;
    for (int v = 0; v <= n; ++v)
        if (v != i) theta.push_back(v);
    return theta;
}

std::vector<int> codegeneracy_map(int n, int j) {
    std::vector<int> theta;
    for (int v = 0; v <= n + 1; ++v) theta.push_back(v <= j ? v : v - 1);
    return theta;
}

} // namespace

MapEnumeration enumerate_maps(const FinSSet& A, const FinSSet& Y, const Fixed& fixed,
                              std::size_t limit, const Budgets& budgets) {
    unsigned long long nodes = 0;
    return enumerate_impl(A, Y, fixed, limit, budgets, nodes);
}

// ---------------------------------------------------------------------------
// map spaces (function complexes and Ex) via the levelwise presentation

struct MapSpaceImpl {
    FinSSet Y;
    Budgets budgets;
    int D = 0;

    std::map<int, std::vector<std::string>> source_ids;   // sorted non-deg ids of S_n
    std::unordered_map<std::string, SMap> registry;       // "n#serial" -> map
    std::map<int, std::vector<std::string>> level_serials;
    Assembled built;

    virtual ~MapSpaceImpl() = default;
    virtual const FinSSet& source(int n) = 0;
    // image in S_n of a non-degenerate simplex of S_m under the map induced
    // by the monotone vertex map theta: [m] -> [n]
    virtual SimplexRef transfer(int m, int n, const std::vector<int>& theta,
                                const std::string& id) = 0;

    const std::vector<std::string>& ids(int n) {
        auto it = source_ids.find(n);
        if (it == source_ids.end()) {
            std::vector<std::string> v;
            for (const auto& level : source(n).simplices)
                for (const auto& id : level) v.push_back(id);
            it = source_ids.emplace(n, std::move(v)).first;
        }
        return it->second;
    }

    static std::string rkey(int n, const std::string& serial) {
        return std::to_string(n) + "#" + serial;
    }

    std::string serialize(int n, const SMap& m) {
        std::vector<std::string> parts;
        for (const auto& id : ids(n)) parts.push_back(ref_key(m.on.at(id)));
        return join(parts, ';');
    }

    std::string put(int n, SMap m) {
        std::string serial = serialize(n, m);
        registry.emplace(rkey(n, serial), std::move(m));
        return serial;
    }

    std::string derived(int m, int n, const std::vector<int>& theta, const std::string& serial) {
        const SMap& f = registry.at(rkey(n, serial));
        SMap g;
        g.source = source(m);
        g.target = Y;
        for (const auto& id : ids(m)) g.on[id] = f.apply(transfer(m, n, theta, id));
        return put(m, std::move(g));
    }

    void build(const std::string& prefix) {
        LevelSpec spec;
        spec.top = D;
        spec.elements = [&](int n) {
            unsigned long long nodes = 0;
            MapEnumeration e =
                enumerate_impl(source(n), Y, {}, budgets.map_cap, budgets, nodes);
            if (e.hit_limit)
                throw BudgetError("function-complex dimension " + std::to_string(n) +
                                  " exceeds the map cap");
            std::vector<std::string> serials;
            for (auto& m : e.maps) serials.push_back(put(n, std::move(m)));
            level_serials[n] = serials;
            return serials;
        };
        spec.face = [&](int n, const std::string& key, int i) {
            return derived(n - 1, n, coface_map(n, i), key);
        };
        spec.degen = [&](int n, const std::string& key, int j) {
            return derived(n + 1, n, codegeneracy_map(n, j), key);
        };
        built = assemble(spec, prefix, D, budgets);
    }

    const SMap& element_of(const std::string& id) const {
        const int n = built.sset.dimension_of(id);
        return registry.at(rkey(n, built.id_to_key.at(id)));
    }
};

namespace {

struct HomImpl : MapSpaceImpl {
    FinSSet A;
    std::map<int, ProductResult> prods;

    const ProductResult& prod(int n) {
        auto it = prods.find(n);
        if (it == prods.end())
            it = prods.emplace(n, product(A, standard_simplex(n), budgets)).first;
        return it->second;
    }
    const FinSSet& source(int n) override { return prod(n).object; }
    SimplexRef transfer(int m, int n, const std::vector<int>& theta,
                        const std::string& id) override {
        const auto& [a, b] = prod(m).components.at(id);
        std::vector<int> seq = delta_seq(m, b);
        for (int& v : seq) v = theta[v];
        return prod(n).pair_ref(a, delta_ref(n, seq));
    }
};

struct ExImpl : MapSpaceImpl {
    std::map<int, FinSSet> sds;
    std::map<std::string, SMap> ordinal_cache;

    const FinSSet& source(int n) override {
        auto it = sds.find(n);
        if (it == sds.end())
            it = sds.emplace(n, complex_to_sset(sd_complex(full_simplex_complex(n)))).first;
        return it->second;
    }
    SimplexRef transfer(int m, int n, const std::vector<int>& theta,
                        const std::string& id) override {
        std::ostringstream key;
        key << n << ":";
        for (int v : theta) key << v << ",";
        auto it = ordinal_cache.find(key.str());
        if (it == ordinal_cache.end())
            it = ordinal_cache.emplace(key.str(), sd_of_ordinal(theta, n)).first;
        return it->second.on.at(id);
    }
};

} // namespace

const SMap& FunctionComplex::element(const std::string& id) const { return impl->element_of(id); }

SimplexRef FunctionComplex::ref_of(int n, const SMap& m) const {
    return impl->built.nf(n, impl->serialize(n, m));
}

const ProductResult& FunctionComplex::level_product(int n) const {
    return static_cast<HomImpl*>(impl.get())->prod(n);
}
const SMap& ExResult::element(const std::string& id) const { return impl->element_of(id); }

FunctionComplex function_complex(const FinSSet& A, const FinSSet& Y, int D,
                                 const Budgets& budgets) {
    auto impl = std::make_shared<HomImpl>();
    impl->A = A;
    impl->Y = Y;
    impl->budgets = budgets;
    impl->D = D;
    impl->build("h");
    return FunctionComplex{impl->built.sset, impl};
}

ExResult ex(const FinSSet& X, int D, const Budgets& budgets) {
    auto impl = std::make_shared<ExImpl>();
    impl->Y = X;
    impl->budgets = budgets;
    impl->D = D;
    impl->build("x");

    ExResult out;
    out.object = impl->built.sset;
    out.impl = impl;
    out.natural.source = X.complete() && X.dim() <= D ? X : truncate(X, std::min(D, X.dim()));
    out.natural.target = out.object;
    for (const auto& level : out.natural.source.simplices) {
        for (const auto& id : level) {
            const int n = X.dimension_of(id);
            const SMap chi = characteristic_map(X, id);
            const SMap lv = lastvertex_smap(n);
            SMap g;
            g.source = impl->source(n);
            g.target = X;
            for (const auto& z : impl->ids(n)) g.on[z] = chi.apply(lv.on.at(z));
            out.natural.on[id] = impl->built.nf(n, impl->serialize(n, g));
        }
    }
    return out;
}

PathSpace path_space_replacement(const SMap& f, int D, const Budgets& budgets) {
    const FinSSet& X = f.source;
    const FinSSet& Y = f.target;
    auto impl = std::make_shared<HomImpl>();
    impl->A = standard_simplex(1);
    impl->Y = Y;
    impl->budgets = budgets;
    impl->D = D;
    impl->build("h");

    auto eval_end = [&](int e, int n, const std::string& serial) {
        std::vector<int> ends(n + 1, e), idseq(n + 1);
        for (int v = 0; v <= n; ++v) idseq[v] = v;
        const SimplexRef arg = impl->prod(n).pair_ref(delta_ref(1, ends), delta_ref(n, idseq));
        return impl->registry.at(MapSpaceImpl::rkey(n, serial)).apply(arg);
    };

    std::unordered_map<std::string, std::pair<SimplexRef, std::string>> payload;
    LevelSpec spec;
    spec.top = D;
    spec.elements = [&](int n) {
        std::vector<std::string> keys;
        for (const SimplexRef& a : all_refs(X, n)) {
            const SimplexRef fa = f.apply(a);
            for (const auto& serial : impl->level_serials.at(n)) {
                if (!(eval_end(0, n, serial) == fa)) continue;
                std::string key = ref_key(a) + "*" + serial;
                payload.emplace(key, std::make_pair(a, serial));
                keys.push_back(std::move(key));
            }
        }
        return keys;
    };
    auto push = [&](int m, int n, const std::vector<int>& theta, const std::string& key) {
        const auto& [a, serial] = payload.at(key);
        // X side: a ∘ theta — faces for the vertices theta misses (top-down),
        // then degeneracies at the duplicate positions
        std::vector<int> uniq = theta;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        SimplexRef ax = a;
        for (int v = n; v >= 0; --v)
            if (!std::binary_search(uniq.begin(), uniq.end(), v)) ax = apply_face(X, ax, v);
        for (std::size_t p = 0; p + 1 < theta.size(); ++p)
            if (theta[p] == theta[p + 1])
                ax = apply_degeneracy(ax, static_cast<int>(p));
        const std::string s2 = impl->derived(m, n, theta, serial);
        std::string key2 = ref_key(ax) + "*" + s2;
        payload.emplace(key2, std::make_pair(ax, s2));
        return key2;
    };
    spec.face = [&](int n, const std::string& key, int i) {
        return push(n - 1, n, coface_map(n, i), key);
    };
    spec.degen = [&](int n, const std::string& key, int j) {
        return push(n + 1, n, codegeneracy_map(n, j), key);
    };

    Assembled asm_ = assemble(spec, "q", D, budgets);
    PathSpace out;
    out.object = asm_.sset;
    out.pi.source = out.object;
    out.pi.target = Y;
    out.to_x.source = out.object;
    out.to_x.target = X;
    for (const auto& [id, key] : asm_.id_to_key) {
        const auto& [a, serial] = payload.at(key);
        const int n = out.object.dimension_of(id);
        out.pi.on[id] = eval_end(1, n, serial);
        out.to_x.on[id] = a;
    }
    return out;
}

// ---------------------------------------------------------------------------
// lifting problems

namespace {

SimplicialComplex corner_complex_clean(int n) {
    SimplicialComplex K = prism_corner_complex(n);
    std::set<std::string> covered;
    for (const auto& f : K.facets)
        for (const auto& v : f) covered.insert(v);
    std::vector<std::string> vs;
    for (const auto& v : K.vertices)
        if (covered.count(v)) vs.push_back(v);
    K.vertices = vs;
    return K;
}

ComplexMap end_embedding(int n) { // Δⁿ -> prism at ε = 1
    ComplexMap m;
    m.src = full_simplex_complex(n);
    m.dst = prism_complex(n);
    for (int i = 0; i <= n; ++i)
        m.on_vertices[std::to_string(i)] = std::to_string(i) + ".1";
    return m;
}

ComplexMap iterate_sd(ComplexMap m, int k) {
    for (int j = 0; j < k; ++j) m = sd_complex_map(m);
    return m;
}

} // namespace

FinSSet boundary_realization(int n) {
    if (n == 0) return FinSSet{};
    return complex_to_sset(boundary_complex(n));
}

FinSSet prism_realization(int n) { return complex_to_sset(prism_complex(n)); }

FinSSet corner_realization(int n) { return complex_to_sset(corner_complex_clean(n)); }

Report validate_lifting_problem(const LiftingProblem& p) {
    Report rep;
    if (p.alpha.source.simplices != boundary_realization(p.n).simplices)
        rep.push_back({"alpha", "source is not the boundary realization"});
    if (p.hb.source.simplices != corner_realization(p.n).simplices)
        rep.push_back({"hb", "source is not the corner realization"});
    if (p.alpha.target.simplices != p.f.source.simplices)
        rep.push_back({"alpha", "target does not match the map source"});
    if (p.hb.target.simplices != p.f.target.simplices)
        rep.push_back({"hb", "target does not match the map target"});
    if (!rep.empty() || p.n == 0) return rep;

    // commuting square: f ∘ α = (h, β) on ∂Δⁿ × {1}
    ComplexMap em = end_embedding(p.n);
    em.src = boundary_complex(p.n);
    em.dst = corner_complex_clean(p.n);
    SMap e = realize_complex_map(em);
    for (const auto& [id, ref] : p.alpha.on) {
        if (!(p.hb.apply(e.on.at(id)) == p.f.apply(ref)))
            rep.push_back({id, "square does not commute on the boundary end"});
    }
    return rep;
}

ExtensionResult extension_search(const LiftingProblem& p, int k_budget, const Budgets& budgets) {
    Report rep = validate_lifting_problem(p);
    if (!rep.empty())
        throw ValidationError("invalid lifting problem: " + rep.front().where + ": " +
                              rep.front().message);
    const FinSSet& X = p.f.source;
    const FinSSet& Y = p.f.target;
    const int n = p.n;

    ExtensionResult res;
    std::ostringstream log;
    unsigned long long nodes = 0;

    const SimplicialComplex Dn = full_simplex_complex(n);
    const SimplicialComplex Pn = prism_complex(n);
    const SimplicialComplex Cn = corner_complex_clean(n);

    for (int k = 0; k <= k_budget; ++k) {
        const FinSSet TD = complex_to_sset(sd_iter(Dn, k));

        Fixed fixed_theta;
        if (n >= 1) {
            const SMap alpha_k = compose(p.alpha, gamma_chain(boundary_complex(n), k));
            for (const auto& [id, ref] : alpha_k.on) fixed_theta[id] = ref;
        }
        MapEnumeration thetas =
            enumerate_impl(TD, X, fixed_theta, budgets.map_cap, budgets, nodes);

        const SMap hb_k = compose(p.hb, gamma_chain(Cn, k));
        const SMap E = realize_complex_map(iterate_sd(end_embedding(n), k));
        const FinSSet& TP = E.target;

        std::size_t attempts = 0;
        for (const SMap& theta : thetas.maps) {
            Fixed fixed_h;
            for (const auto& [id, ref] : hb_k.on) fixed_h[id] = ref;
            bool conflict = false;
            for (const auto& [id, ref] : theta.on) {
                const std::string pid = E.on.at(id).base;
                const SimplexRef want = p.f.apply(ref);
                auto it = fixed_h.find(pid);
                if (it != fixed_h.end() && !(it->second == want)) {
                    conflict = true;
                    break;
                }
                fixed_h[pid] = want;
            }
            if (conflict) continue;
            ++attempts;
            MapEnumeration hs = enumerate_impl(TP, Y, fixed_h, 1, budgets, nodes);
            if (!hs.maps.empty()) {
                res.success = true;
                res.k = k;
                res.theta = theta;
                res.homotopy = hs.maps.front();
                log << "k=" << k << " theta-candidates=" << thetas.maps.size()
                    << " homotopy-attempts=" << attempts << " result=success\n";
                res.transcript = log.str();
                res.nodes = nodes;
                return res;
            }
        }
        log << "k=" << k << " theta-candidates=" << thetas.maps.size()
            << " homotopy-attempts=" << attempts << " result=none\n";
    }
    log << "exhausted k<=" << k_budget << "\n";
    res.transcript = log.str();
    res.nodes = nodes;
    return res;
}

WeqVerdict weq_test(const SMap& f, const Budgets& budgets) {
    const FinSSet& X = f.source;
    const FinSSet& Y = f.target;
    WeqVerdict v;

    if (X.complete() && Y.complete() && is_isomorphism(f)) {
        v.witness = "isomorphism";
        return v;
    }

    // stage 1: π₀
    Pi0 px = pi0(X), py = pi0(Y);
    std::map<int, int> cmap; // induced function on components
    std::set<int> image;
    bool injective = true;
    for (const auto& [vx, cx] : px.component) {
        const int cy = py.component.at(f.on.at(vx).base);
        auto [it, fresh] = cmap.emplace(cx, cy);
        (void)it;
        if (fresh && !image.insert(cy).second) injective = false;
    }
    if (px.count != py.count || !injective || image.size() != py.count) {
        v.status = WeqVerdict::Status::CounterexampleFound;
        std::ostringstream os;
        os << "pi0: " << px.count << " component(s) vs " << py.count
           << (px.count == py.count ? "; induced component map is not a bijection" : "");
        v.witness = os.str();
        return v;
    }

    // stage 2: homology with the induced map
    InducedHomology ih = induced_map_homology(f);
    for (std::size_t d = 0; d < ih.iso.size(); ++d) {
        if (ih.iso[d]) continue;
        v.status = WeqVerdict::Status::CounterexampleFound;
        std::ostringstream os;
        os << "H_" << d << ": " << ih.source[d].to_string() << " -> " << ih.target[d].to_string()
           << " is not an isomorphism";
        v.witness = os.str();
        return v;
    }

    // stage 3: extension search over the canonical problem family
    std::ostringstream os;
    os << "pi0 and homology consistent";
    if (!X.complete() || !Y.complete()) {
        os << "; extension stage skipped (truncated input)";
        v.witness = os.str();
        return v;
    }
    Budgets stage = budgets;
    stage.search_nodes = std::min<std::size_t>(budgets.search_nodes, 200000);
    std::size_t posed = 0, extended = 0, exhausted = 0, capped = 0;
    for (int n = 0; n <= budgets.nmax; ++n) {
        FinSSet B = boundary_realization(n);
        FinSSet Dn = complex_to_sset(full_simplex_complex(n));
        const SMap pr = [&] { // corner -> Δⁿ projection
            ComplexMap m;
            m.src = corner_complex_clean(n);
            m.dst = full_simplex_complex(n);
            for (const auto& vtx : m.src.vertices)
                m.on_vertices[vtx] = vtx.substr(0, vtx.find('.'));
            return realize_complex_map(m);
        }();
        unsigned long long nodes = 0;
        MapEnumeration alphas;
        try {
            alphas = enumerate_impl(B, X, {}, stage.problems_per_dim, stage, nodes);
        } catch (const BudgetError&) {
            ++capped;
            continue;
        }
        std::size_t posed_this_dim = 0;
        for (const SMap& alpha : alphas.maps) {
            if (posed_this_dim >= stage.problems_per_dim) break;
            Fixed fixed_b;
            for (const auto& [id, ref] : alpha.on) fixed_b[id] = f.apply(ref);
            MapEnumeration betas;
            try {
                betas = enumerate_impl(Dn, Y, fixed_b, 4, stage, nodes);
            } catch (const BudgetError&) {
                ++capped;
                continue;
            }
            for (const SMap& beta : betas.maps) {
                if (posed_this_dim >= stage.problems_per_dim) break;
                LiftingProblem prob;
                prob.n = n;
                prob.alpha = alpha;
                prob.hb = compose(beta, pr);
                prob.f = f;
                ++posed;
                ++posed_this_dim;
                try {
                    ExtensionResult r = extension_search(prob, budgets.kmax, stage);
                    (r.success ? extended : exhausted) += 1;
                } catch (const BudgetError&) {
                    ++capped;
                }
            }
        }
    }
    os << "; extension problems: " << posed << " posed, " << extended << " extended, "
       << exhausted << " exhausted, " << capped << " budget-capped (n_max=" << budgets.nmax
       << ", k_max=" << budgets.kmax << ")";
    v.witness = os.str();
    return v;
}

} // namespace prosimpl
