#include "prosimpl/diagrams.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "prosimpl/assemble.hpp"
#include "prosimpl/homology.hpp"

namespace prosimpl {

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// δ^i: [n-1] -> [n], skipping i
std::vector<int> coface_vm(int n, int i) {
    std::vector<int> v;
    for (int t = 0; t <= n; ++t)
        if (t != i) v.push_back(t);
    return v;
}

// σ_j: [n+1] -> [n], hitting j twice
std::vector<int> codegen_vm(int n, int j) {
    std::vector<int> v;
    for (int t = 0; t <= n; ++t) {
        v.push_back(t);
        if (t == j) v.push_back(t);
    }
    return v;
}

std::vector<std::string> flat_ids(const FinSSet& X) {
    std::vector<std::string> out;
    for (const auto& level : X.simplices)
        for (const auto& id : level) out.push_back(id);
    return out;
}

bool sset_equal(const FinSSet& A, const FinSSet& B) {
    if (A.simplices != B.simplices) return false;
    for (const auto& [id, fs] : A.faces) {
        auto it = B.faces.find(id);
        if (it == B.faces.end() || it->second != fs) return false;
    }
    return true;
}

void raise_on(const Report& rep, const std::string& what) {
    if (!rep.empty())
        throw ValidationError(what + ": " + rep.front().where + ": " + rep.front().message);
}

int max_object_dim(const Diagram& X) {
    int d = 0;
    for (const auto& [o, v] : X.objects) d = std::max(d, v.dim());
    return d;
}

} // namespace

SMap diagram_arrow(const Diagram& X, const std::string& morphism) {
    auto it = X.arrows.find(morphism);
    if (it != X.arrows.end()) return it->second;
    if (X.index.is_identity(morphism))
        return identity_map(X.objects.at(X.index.mor(morphism).src));
    throw ValidationError("no map assigned to morphism " + morphism);
}

Report validate_promap(const ProMap& p) {
    Report rep = validate_functor(p.alpha);
    for (auto& v : validate_diagram(p.X)) rep.push_back(v);
    for (auto& v : validate_diagram(p.Y)) rep.push_back(v);
    if (!rep.empty()) return rep;

    auto shape = [](const FinCategory& c) {
        std::vector<std::string> v = c.objects;
        for (const auto& m : c.morphisms) v.push_back("m:" + m.id);
        std::sort(v.begin(), v.end());
        return v;
    };
    if (shape(p.alpha.source) != shape(p.Y.index))
        rep.push_back({"alpha", "source category differs from the index of Y"});
    if (shape(p.alpha.target) != shape(p.X.index))
        rep.push_back({"alpha", "target category differs from the index of X"});
    if (!rep.empty()) return rep;

    for (const auto& j : p.Y.index.objects) {
        auto it = p.theta.find(j);
        if (it == p.theta.end()) {
            rep.push_back({j, "missing component map"});
            continue;
        }
        const SMap& t = it->second;
        if (!sset_equal(t.source, p.X.objects.at(p.alpha.on_objects.at(j))))
            rep.push_back({j, "component source is not X(alpha(j))"});
        else if (!sset_equal(t.target, p.Y.objects.at(j)))
            rep.push_back({j, "component target is not Y(j)"});
        else
            for (const auto& v : validate_map(t)) rep.push_back({j + "/" + v.where, v.message});
    }
    if (!rep.empty()) return rep;

    for (const auto& a : p.Y.index.morphisms) {
        if (p.Y.index.is_identity(a.id)) continue;
        SMap lhs = compose(p.theta.at(a.dst), diagram_arrow(p.X, p.alpha.on_morphisms.at(a.id)));
        SMap rhs = compose(diagram_arrow(p.Y, a.id), p.theta.at(a.src));
        if (!same_assignment(lhs, rhs)) rep.push_back({a.id, "naturality square fails"});
    }
    return rep;
}

ProMap inclusion_promap(const Diagram& X, const Diagram& Y,
                        const std::map<std::string, SMap>& incl) {
    return ProMap{identity_functor(X.index), X, Y, incl};
}

FibrantTestObject fibrant_sset(const std::string& name, FinSSet X) {
    FibrantTestObject z;
    z.name = name;
    z.fixed = std::move(X);
    return z;
}

FibrantTestObject fibrant_groupoid(const std::string& name, FinCategory G) {
    FibrantTestObject z;
    z.name = name;
    z.groupoid = std::move(G);
    return z;
}

FinSSet FibrantTestObject::materialize(int D) const {
    if (groupoid) return groupoid_nerve(*groupoid, D);
    if (!fixed.complete() && fixed.cap < D)
        throw ValidationError("test object " + name + " is truncated below dimension " +
                              std::to_string(D));
    return fixed;
}

// ---------------------------------------------------------------------------
// the homotopy colimit of i -> hom(X(i), Z)

struct HocolimImpl {
    Diagram X;
    FinSSet Zmat;
    Budgets budgets;
    int D = 0;

    std::map<std::pair<std::string, int>, ProductResult> prods;
    std::unordered_map<std::string, HocolimSimplex> registry; // rkey -> payload
    std::map<int, std::vector<std::vector<std::string>>> chain_cache;
    Assembled built;

    const ProductResult& prod(const std::string& obj, int n) {
        auto key = std::make_pair(obj, n);
        auto it = prods.find(key);
        if (it == prods.end())
            it = prods.emplace(key, product(X.objects.at(obj), standard_simplex(n), budgets))
                     .first;
        return it->second;
    }

    static std::string rkey(int n, const std::string& key) {
        return std::to_string(n) + "#" + key;
    }

    std::string serialize(const HocolimSimplex& s) {
        const int n = static_cast<int>(s.chain.size());
        std::vector<std::string> parts;
        for (const auto& id : flat_ids(prod(s.at, n).object))
            parts.push_back(ref_key(s.tau.on.at(id)));
        const std::string ck = s.chain.empty() ? s.at : join(s.chain, '|');
        return ck + "@" + join(parts, ';');
    }

    std::string put(HocolimSimplex s) {
        const int n = static_cast<int>(s.chain.size());
        std::string key = serialize(s);
        registry.emplace(rkey(n, key), std::move(s));
        return key;
    }

    std::vector<std::string> objects_along(const HocolimSimplex& s) const {
        std::vector<std::string> obj;
        for (const auto& m : s.chain) obj.push_back(X.index.mor(m).src);
        obj.push_back(s.at);
        return obj;
    }

    // composite of chain entries from position `from` to position `to`
    std::string composite(const HocolimSimplex& s, int from, int to) const {
        std::string acc = X.index.identity.at(objects_along(s)[from]);
        for (int u = from; u < to; ++u) acc = X.index.compose_mor(s.chain[u], acc);
        return acc;
    }

    HocolimSimplex transfer(const HocolimSimplex& s, const std::vector<int>& theta) {
        const int n = static_cast<int>(s.chain.size());
        const int m = static_cast<int>(theta.size()) - 1;
        const auto obj = objects_along(s);
        HocolimSimplex out;
        for (int t = 1; t <= m; ++t) out.chain.push_back(composite(s, theta[t - 1], theta[t]));
        out.at = obj[theta[m]];
        SMap Xa = diagram_arrow(X, composite(s, theta[m], n));
        const ProductResult& Pn = prod(s.at, n);
        const ProductResult& Pm = prod(out.at, m);
        out.tau.source = Pm.object;
        out.tau.target = Zmat;
        for (const auto& z : flat_ids(Pm.object)) {
            const auto& [x, b] = Pm.components.at(z);
            std::vector<int> seq = delta_seq(m, b);
            for (int& v : seq) v = theta[v];
            out.tau.on[z] = s.tau.apply(Pn.pair_ref(Xa.apply(x), delta_ref(n, seq)));
        }
        return out;
    }

    const std::vector<std::vector<std::string>>& chains(int n) {
        auto it = chain_cache.find(n);
        if (it != chain_cache.end()) return it->second;
        std::vector<std::string> mors;
        for (const auto& m : X.index.morphisms) mors.push_back(m.id);
        std::sort(mors.begin(), mors.end());
        std::vector<std::vector<std::string>> cur(1);
        for (int t = 0; t < n; ++t) {
            std::vector<std::vector<std::string>> next;
            for (const auto& c : cur)
                for (const auto& m : mors) {
                    if (!c.empty() && X.index.mor(c.back()).dst != X.index.mor(m).src) continue;
                    next.push_back(c);
                    next.back().push_back(m);
                }
            cur = std::move(next);
        }
        return chain_cache.emplace(n, std::move(cur)).first->second;
    }

    void build(const std::string& prefix) {
        LevelSpec spec;
        spec.top = D;
        spec.elements = [&](int n) {
            std::vector<std::string> keys;
            auto add_for = [&](const std::vector<std::string>& chain, const std::string& at) {
                MapEnumeration e =
                    enumerate_maps(prod(at, n).object, Zmat, {}, budgets.map_cap, budgets);
                if (e.hit_limit)
                    throw BudgetError("homotopy colimit dimension " + std::to_string(n) +
                                      " exceeds the map cap");
                for (auto& m : e.maps) {
                    HocolimSimplex s;
                    s.chain = chain;
                    s.at = at;
                    s.tau = std::move(m);
                    keys.push_back(put(std::move(s)));
                }
            };
            if (n == 0) {
                std::vector<std::string> objs = X.index.objects;
                std::sort(objs.begin(), objs.end());
                for (const auto& o : objs) add_for({}, o);
            } else {
                for (const auto& c : chains(n)) add_for(c, X.index.mor(c.back()).dst);
            }
            return keys;
        };
        spec.face = [&](int n, const std::string& key, int i) {
            return put(transfer(registry.at(rkey(n, key)), coface_vm(n, i)));
        };
        spec.degen = [&](int n, const std::string& key, int j) {
            return put(transfer(registry.at(rkey(n, key)), codegen_vm(n, j)));
        };
        built = assemble(spec, prefix, D, budgets);
    }
};

const HocolimSimplex& Hocolim::element(const std::string& id) const {
    const int n = impl->built.sset.dimension_of(id);
    return impl->registry.at(HocolimImpl::rkey(n, impl->built.id_to_key.at(id)));
}

HocolimSimplex Hocolim::element_of_ref(const SimplexRef& r) const {
    HocolimSimplex s = element(r.base);
    for (auto it = r.word.rbegin(); it != r.word.rend(); ++it)
        s = impl->transfer(s, codegen_vm(static_cast<int>(s.chain.size()), *it));
    return s;
}

SimplexRef Hocolim::ref_of(const HocolimSimplex& s) const {
    return impl->built.nf(static_cast<int>(s.chain.size()), impl->serialize(s));
}

const ProductResult& Hocolim::level_product(const std::string& obj, int n) const {
    return impl->prod(obj, n);
}

const FinSSet& Hocolim::test_object() const { return impl->Zmat; }

Hocolim hocolim(const Diagram& X, const FibrantTestObject& Z, int D, const Budgets& budgets) {
    raise_on(validate_diagram(X), "invalid diagram");
    auto impl = std::make_shared<HocolimImpl>();
    impl->X = X;
    impl->Zmat = Z.materialize(max_object_dim(X) + D);
    impl->budgets = budgets;
    impl->D = D;
    impl->build("hc");

    Hocolim out;
    out.object = impl->built.sset;
    out.impl = impl;
    out.to_nerve.source = out.object;
    std::optional<int> trunc;
    if (!is_loop_free(X.index)) trunc = D;
    out.to_nerve.target = nerve(X.index, trunc);
    for (const auto& level : out.object.simplices)
        for (const auto& id : level) {
            const HocolimSimplex& s = out.element(id);
            out.to_nerve.on[id] =
                nerve_string_ref(X.index, impl->objects_along(s).front(), s.chain);
        }
    return out;
}

// ---------------------------------------------------------------------------
// the slice-category model

SliceNerve slice_nerve(const Diagram& X, const FibrantTestObject& Z, int D,
                       const Budgets& budgets) {
    raise_on(validate_diagram(X), "invalid diagram");
    FinSSet Zmat = Z.materialize(max_object_dim(X));

    auto serialized = [&](const FinSSet& A, const SMap& g) {
        std::vector<std::string> parts;
        for (const auto& id : flat_ids(A)) parts.push_back(ref_key(g.on.at(id)));
        return join(parts, ';');
    };

    std::vector<std::string> objs = X.index.objects;
    std::sort(objs.begin(), objs.end());
    std::map<std::string, std::vector<SMap>> maps_at;
    std::map<std::string, std::map<std::string, int>> serial_at;
    for (const auto& i : objs) {
        MapEnumeration e = enumerate_maps(X.objects.at(i), Zmat, {}, budgets.map_cap, budgets);
        if (e.hit_limit)
            throw BudgetError("slice nerve: hom(" + i + ", Z) exceeds the map cap");
        for (std::size_t k = 0; k < e.maps.size(); ++k)
            serial_at[i][serialized(X.objects.at(i), e.maps[k])] = static_cast<int>(k);
        maps_at[i] = std::move(e.maps);
    }

    SliceNerve out;
    FinCategory C;
    auto oid = [](const std::string& i, int k) { return i + "/" + std::to_string(k); };
    for (const auto& i : objs)
        for (int k = 0; k < static_cast<int>(maps_at[i].size()); ++k) {
            C.objects.push_back(oid(i, k));
            out.vertex_maps[oid(i, k)] = maps_at[i][k];
        }
    std::map<std::string, std::string> under; // slice morphism -> index morphism
    for (const auto& i : objs)
        for (int k = 0; k < static_cast<int>(maps_at[i].size()); ++k) {
            const std::string o = oid(i, k);
            C.morphisms.push_back({"id:" + o, o, o});
            C.identity[o] = "id:" + o;
            under["id:" + o] = X.index.identity.at(i);
        }
    for (const auto& a : X.index.morphisms) {
        if (X.index.is_identity(a.id)) continue;
        SMap Xa = diagram_arrow(X, a.id);
        for (int kp = 0; kp < static_cast<int>(maps_at[a.dst].size()); ++kp) {
            SMap g = compose(maps_at[a.dst][kp], Xa);
            const int k = serial_at[a.src].at(serialized(X.objects.at(a.src), g));
            const std::string mid = a.id + "@" + std::to_string(kp);
            C.morphisms.push_back({mid, oid(a.src, k), oid(a.dst, kp)});
            under[mid] = a.id;
        }
    }
    auto slice_mor = [&](const std::string& c, const std::string& m1src,
                         const std::string& dstobj) -> std::string {
        if (X.index.is_identity(c)) return C.identity.at(m1src);
        return c + "@" + dstobj.substr(dstobj.find('/') + 1);
    };
    for (const auto& m1 : C.morphisms)
        for (const auto& m2 : C.morphisms) {
            if (m2.src != m1.dst) continue;
            const std::string c = X.index.compose_mor(under.at(m2.id), under.at(m1.id));
            C.table[{m2.id, m1.id}] = slice_mor(c, m1.src, m2.dst);
        }
    out.category = std::move(C);
    out.object = nerve(out.category, D);
    return out;
}

HocolimComparison compare_hocolim_models(const Diagram& X, const FibrantTestObject& Z, int D,
                                         const Budgets& budgets) {
    HocolimComparison out;
    out.hocolim_counts = hocolim(X, Z, D, budgets).object.counts();
    out.slice_counts = slice_nerve(X, Z, D, budgets).object.counts();
    out.hocolim_counts.resize(D + 1, 0);
    out.slice_counts.resize(D + 1, 0);
    out.equal = out.hocolim_counts == out.slice_counts;
    return out;
}

// ---------------------------------------------------------------------------
// induced maps and the pro-equivalence check

InducedHocolim induced_hocolim_map(const ProMap& p, const FibrantTestObject& Z, int D,
                                   const Budgets& budgets) {
    raise_on(validate_promap(p), "invalid pro-map");
    InducedHocolim out{hocolim(p.Y, Z, D, budgets), hocolim(p.X, Z, D, budgets), {}};
    out.map.source = out.source.object;
    out.map.target = out.target.object;
    for (const auto& level : out.source.object.simplices)
        for (const auto& id : level) {
            const HocolimSimplex& s = out.source.element(id);
            const int n = static_cast<int>(s.chain.size());
            HocolimSimplex t;
            for (const auto& m : s.chain) t.chain.push_back(p.alpha.on_morphisms.at(m));
            t.at = p.alpha.on_objects.at(s.at);
            const ProductResult& PY = out.source.level_product(s.at, n);
            const ProductResult& PX = out.target.level_product(t.at, n);
            const SMap& th = p.theta.at(s.at);
            t.tau.source = PX.object;
            t.tau.target = out.target.test_object();
            for (const auto& z : flat_ids(PX.object)) {
                const auto& [x, b] = PX.components.at(z);
                t.tau.on[z] = s.tau.apply(PY.pair_ref(th.apply(x), b));
            }
            out.map.on[id] = out.target.ref_of(t);
        }
    return out;
}

ProEqVerdict pro_equivalence_check(const ProMap& p, const std::vector<FibrantTestObject>& Zs,
                                   int D, const Budgets& budgets) {
    raise_on(validate_promap(p), "invalid pro-map");
    ProEqVerdict out;
    std::optional<int> trunc;
    if (!is_loop_free(p.alpha.source) || !is_loop_free(p.alpha.target)) trunc = D;

    auto record = [&](const std::string& label, const WeqVerdict& v) {
        const bool counter = v.status == WeqVerdict::Status::CounterexampleFound;
        const std::string line =
            label + ": " + (counter ? "counterexample: " : "") + v.witness;
        out.checks.push_back(line);
        if (counter && out.status == ProEqVerdict::Status::NoObstructionFound) {
            out.status = ProEqVerdict::Status::NotProEquivalence;
            out.witness = line;
        }
        return counter;
    };

    if (record("nerve(J) -> nerve(I)", weq_test(nerve_map(p.alpha, trunc), budgets)))
        return out;
    for (const auto& Z : Zs) {
        InducedHocolim ih = induced_hocolim_map(p, Z, D, budgets);
        if (record("Z=" + Z.name, weq_test(ih.map, budgets))) return out;
    }
    std::ostringstream w;
    w << "no obstruction relative to " << Zs.size() << " test object(s) at dimension " << D;
    out.witness = w.str();
    return out;
}

// ---------------------------------------------------------------------------
// realizations over a complex

LKRealization realize_LK(const Hocolim& H, const SimplicialComplex& K, const SMap& omega,
                         const Budgets& budgets) {
    FinSSet Ks = complex_to_sset(K);
    if (!sset_equal(omega.source, Ks))
        throw ValidationError("omega is not defined on the realization of K");
    raise_on(validate_map(omega), "omega is not simplicial");

    LKRealization out;
    out.f.target = H.test_object();
    const std::vector<std::string> order = flat_ids(Ks);
    if (order.empty()) {
        out.f.source = out.object;
        out.verified = true;
        return out;
    }

    std::map<std::string, int> idx;
    std::vector<HocolimSimplex> payload;
    std::vector<FinSSet> objs;
    for (const auto& sid : order) {
        idx[sid] = static_cast<int>(payload.size());
        payload.push_back(H.element_of_ref(omega.on.at(sid)));
        objs.push_back(H.level_product(payload.back().at, Ks.dimension_of(sid)).object);
    }

    std::vector<GlueArrow> arrows;
    for (const auto& sid : order) {
        const int q = Ks.dimension_of(sid);
        if (q == 0) continue;
        const HocolimSimplex& st = payload[idx[sid]];
        const ProductResult& Pq = H.level_product(st.at, q);
        for (int i = 0; i <= q; ++i) {
            const int ri = idx.at(Ks.faces.at(sid)[i].base);
            const HocolimSimplex& sr = payload[ri];
            const std::vector<int> theta = coface_vm(q, i);
            SMap Xa = diagram_arrow(H.impl->X, H.impl->composite(st, theta.back(), q));
            const ProductResult& Pr = H.level_product(sr.at, q - 1);
            SMap m;
            m.source = objs[ri];
            m.target = objs[idx[sid]];
            for (const auto& z : flat_ids(objs[ri])) {
                const auto& [x, b] = Pr.components.at(z);
                std::vector<int> seq = delta_seq(q - 1, b);
                for (int& v : seq) v = theta[v];
                m.on[z] = Pq.pair_ref(Xa.apply(x), delta_ref(q, seq));
            }
            arrows.push_back({ri, idx[sid], std::move(m)});
        }
    }

    GlueResult g = glue(objs, arrows, "lk", budgets);
    out.object = g.object;
    out.f.source = out.object;
    for (const auto& level : out.object.simplices)
        for (const auto& id : level) {
            const auto& [oi, zid] = g.rep.at(id);
            out.rep[id] = {order[oi], zid};
            out.f.on[id] =
                payload[oi].tau.apply(SimplexRef{{}, zid, out.object.dimension_of(id)});
        }
    out.verified = true;
    for (const auto& sid : order) {
        SMap leg = g.cocone[idx[sid]];
        if (!same_assignment(compose(out.f, leg), payload[idx[sid]].tau)) out.verified = false;
        out.cocone[sid] = std::move(leg);
    }
    return out;
}

LKRealization realize_LK(const Hocolim& H, const SimplicialComplex& K, const FunctorData& omega,
                         const Budgets& budgets) {
    return realize_LK(H, K, realize_functor(complex_to_sset(K), H.object, omega), budgets);
}

// ---------------------------------------------------------------------------
// corner extension problems

CornerFrame standard_corner_frame(int n) {
    CornerFrame f;
    if (n >= 1) f.K = boundary_complex(n);
    f.Kp = full_simplex_complex(n);
    f.L = prism_corner_complex(n);
    f.Lp = prism_complex(n);
    f.k_in_kp = {f.K, f.Kp, {}};
    f.l_in_lp = {f.L, f.Lp, {}};
    f.k_in_l = {f.K, f.L, {}};
    f.kp_in_lp = {f.Kp, f.Lp, {}};
    for (const auto& v : f.K.vertices) {
        f.k_in_kp.on_vertices[v] = v;
        f.k_in_l.on_vertices[v] = v + ".1";
    }
    for (const auto& v : f.L.vertices) f.l_in_lp.on_vertices[v] = v;
    for (const auto& v : f.Kp.vertices) f.kp_in_lp.on_vertices[v] = v + ".1";
    return f;
}

CornerResult corner_extension_test(const CornerProblem& p, int sd_budget,
                                   const Budgets& budgets) {
    ProMap ip = inclusion_promap(p.X, p.Y, p.incl);
    raise_on(validate_promap(ip), "invalid inclusion");
    InducedHocolim ind = induced_hocolim_map(ip, p.Z, p.D, budgets);
    const Hocolim& HY = ind.source;
    const Hocolim& HX = ind.target;

    if (!sset_equal(p.omega.target, HY.object) || !sset_equal(p.beta.target, HX.object))
        throw ValidationError("corner data does not land in the homotopy colimits");
    {
        SMap klr = realize_complex_map(p.frame.k_in_l);
        if (!same_assignment(compose(ind.map, p.omega), compose(p.beta, klr)))
            throw ValidationError("corner data does not commute over K");
    }
    {
        const FinSSet lp = complex_to_sset(p.frame.Lp);
        if (lp.dim() > p.D)
            throw ValidationError("frame dimension exceeds the homotopy colimit cap");
    }

    CornerResult out;
    std::ostringstream ts;
    ComplexMap kkp = p.frame.k_in_kp, llp = p.frame.l_in_lp, kplp = p.frame.kp_in_lp,
               kl = p.frame.k_in_l;
    for (int k = 0; k <= sd_budget; ++k) {
        if (k > 0) {
            kkp = sd_complex_map(kkp);
            llp = sd_complex_map(llp);
            kplp = sd_complex_map(kplp);
            kl = sd_complex_map(kl);
        }
        SMap wk = compose(p.omega, gamma_chain(p.frame.K, k));
        SMap bk = compose(p.beta, gamma_chain(p.frame.L, k));
        SMap iwk = compose(ind.map, wk);

        // the corner pushout L_K Y ∪_{L_K X} L_L X at this level
        LKRealization LKY = realize_LK(HY, kkp.src, wk, budgets);
        LKRealization LKX = realize_LK(HX, kkp.src, iwk, budgets);
        LKRealization LLX = realize_LK(HX, llp.src, bk, budgets);
        SMap klr = realize_complex_map(kl);

        SMap a1, a2;
        a1.source = LKX.object;
        a1.target = LKY.object;
        a2.source = LKX.object;
        a2.target = LLX.object;
        for (const auto& level : LKX.object.simplices)
            for (const auto& id : level) {
                const auto& [sid, z] = LKX.rep.at(id);
                const int q = LKX.object.dimension_of(id);
                const HocolimSimplex sX = HX.element_of_ref(iwk.on.at(sid));
                const ProductResult& PX = HX.level_product(sX.at, q);
                const ProductResult& PY = HY.level_product(sX.at, q);
                const auto& [x, b] = PX.components.at(z);
                a1.on[id] = LKY.cocone.at(sid).apply(PY.pair_ref(p.incl.at(sX.at).apply(x), b));
                a2.on[id] = LLX.cocone.at(klr.on.at(sid).base).apply(SimplexRef{{}, z, q});
            }
        GlueResult P = glue({LKX.object, LKY.object, LLX.object}, {{0, 1, a1}, {0, 2, a2}},
                            "cp", budgets);
        out.pushout = P.object;
        out.to_z.source = P.object;
        out.to_z.target = HY.test_object();
        out.to_z.on.clear();
        for (const auto& level : P.object.simplices)
            for (const auto& id : level) {
                const auto& [oi, zid] = P.rep.at(id);
                const SMap& fpiece = oi == 0 ? LKX.f : oi == 1 ? LKY.f : LLX.f;
                out.to_z.on[id] = fpiece.on.at(zid);
            }

        // search the extension of (ω, β) to (K', L')
        const FinSSet Kks = complex_to_sset(kkp.src);
        const FinSSet Lks = complex_to_sset(llp.src);
        const FinSSet Kps = complex_to_sset(kkp.dst);
        const FinSSet Lps = complex_to_sset(llp.dst);
        SMap kkpr = realize_complex_map(kkp);
        SMap llpr = realize_complex_map(llp);
        SMap kplpr = realize_complex_map(kplp);

        std::unordered_map<std::string, SimplexRef> fixed_w;
        for (const auto& sid : flat_ids(Kks)) fixed_w[kkpr.on.at(sid).base] = wk.on.at(sid);
        MapEnumeration ew = enumerate_maps(Kps, HY.object, fixed_w, budgets.map_cap, budgets);
        std::size_t beta_attempts = 0;
        for (const auto& wp : ew.maps) {
            std::unordered_map<std::string, SimplexRef> fixed_b;
            for (const auto& sid : flat_ids(Lks)) fixed_b[llpr.on.at(sid).base] = bk.on.at(sid);
            bool ok = true;
            for (const auto& sid : flat_ids(Kps)) {
                const SimplexRef v = ind.map.apply(wp.on.at(sid));
                const std::string where = kplpr.on.at(sid).base;
                auto it = fixed_b.find(where);
                if (it != fixed_b.end() && !(it->second == v)) {
                    ok = false;
                    break;
                }
                fixed_b[where] = v;
            }
            if (!ok) continue;
            ++beta_attempts;
            MapEnumeration eb = enumerate_maps(Lps, HX.object, fixed_b, 1, budgets);
            if (!eb.maps.empty()) {
                out.success = true;
                out.k = k;
                out.omega_ext = wp;
                out.beta_ext = eb.maps[0];
                ts << "k=" << k << " omega-candidates=" << ew.maps.size()
                   << " beta-attempts=" << beta_attempts << " result=success\n";
                out.transcript = ts.str();
                return out;
            }
        }
        ts << "k=" << k << " omega-candidates=" << ew.maps.size()
           << (ew.hit_limit ? " (capped)" : "") << " beta-attempts=" << beta_attempts
           << " result=none\n";
    }
    ts << "exhausted k<=" << sd_budget << "\n";
    out.transcript = ts.str();
    return out;
}

// ---------------------------------------------------------------------------
// the filtered refinement problem

FrameCorner frame_corner(int n, const FinSSet& Yi, const SMap& incl_i, const Budgets& budgets) {
    FrameCorner out{product(standard_simplex(n), Yi, budgets), {}, {}};
    std::set<std::string> ximg;
    for (const auto& level : incl_i.source.simplices)
        for (const auto& id : level) {
            const SimplexRef& r = incl_i.on.at(id);
            if (!r.word.empty())
                throw ValidationError("inclusion is not levelwise monic at " + id);
            ximg.insert(r.base);
        }
    std::string topid;
    for (int v = 0; v <= n; ++v) {
        if (v) topid += '|';
        topid += std::to_string(v);
    }
    FinSSet C;
    for (const auto& id : flat_ids(out.prod.object)) {
        const auto& [d, y] = out.prod.components.at(id);
        if (d.base == topid && !ximg.count(y.base)) continue;
        const int q = out.prod.object.dimension_of(id);
        C.add_simplex(q, id,
                      q >= 1 ? out.prod.object.faces.at(id) : std::vector<SimplexRef>{});
    }
    C.reindex();
    out.corner = std::move(C);
    out.include = inclusion_map(out.corner, out.prod.object);
    return out;
}

RefinementResult filtered_refinement_solve(const RefinementProblem& p, const Budgets& budgets) {
    if (!is_left_filtered(p.X.index))
        throw ValidationError("index category is not left filtered");
    ProMap ip = inclusion_promap(p.X, p.Y, p.incl);
    raise_on(validate_promap(ip), "invalid inclusion");
    if (!p.X.index.has_object(p.index))
        throw ValidationError("unknown index object " + p.index);

    FrameCorner fci = frame_corner(p.n, p.Y.objects.at(p.index), p.incl.at(p.index), budgets);
    if (!sset_equal(p.f.source, fci.corner))
        throw ValidationError("problem map is not defined on the frame corner");
    raise_on(validate_map(p.f), "problem map is not simplicial");
    FinSSet Zmat = p.Z.materialize(p.n + max_object_dim(p.Y));

    std::vector<std::string> cands;
    for (const auto& m : p.X.index.morphisms)
        if (m.dst == p.index) cands.push_back(m.id);
    std::sort(cands.begin(), cands.end());
    std::stable_partition(cands.begin(), cands.end(),
                          [&](const std::string& m) { return p.X.index.is_identity(m); });

    RefinementResult out;
    std::ostringstream ts;
    for (const auto& a : cands) {
        const std::string j = p.X.index.mor(a).src;
        FrameCorner fcj = frame_corner(p.n, p.Y.objects.at(j), p.incl.at(j), budgets);
        SMap Ya = diagram_arrow(p.Y, a);
        std::unordered_map<std::string, SimplexRef> fixed;
        for (const auto& z : flat_ids(fcj.corner)) {
            const auto& [d, y] = fcj.prod.components.at(z);
            fixed[z] = p.f.apply(fci.prod.pair_ref(d, Ya.apply(y)));
        }
        MapEnumeration e = enumerate_maps(fcj.prod.object, Zmat, fixed, 1, budgets);
        ts << "alpha=" << a << " fixed=" << fixed.size()
           << " result=" << (e.maps.empty() ? "none" : "lift") << "\n";
        if (!e.maps.empty()) {
            out.solved = true;
            out.alpha = a;
            out.lift = e.maps[0];
            out.transcript = ts.str();
            return out;
        }
    }
    ts << "exhausted all morphisms into " << p.index << "\n";
    out.transcript = ts.str();
    return out;
}

FinSSet colim_hom(const Diagram& X, const FibrantTestObject& Z, int D, const Budgets& budgets) {
    raise_on(validate_diagram(X), "invalid diagram");
    FinSSet Zmat = Z.materialize(max_object_dim(X) + D);

    std::vector<std::string> objs = X.index.objects;
    std::sort(objs.begin(), objs.end());
    std::map<std::string, int> oi;
    std::vector<FunctionComplex> fcs;
    std::vector<FinSSet> gobjs;
    for (const auto& i : objs) {
        oi[i] = static_cast<int>(fcs.size());
        fcs.push_back(function_complex(X.objects.at(i), Zmat, D, budgets));
        gobjs.push_back(fcs.back().object);
    }
    std::vector<GlueArrow> arrows;
    for (const auto& a : X.index.morphisms) {
        if (X.index.is_identity(a.id)) continue;
        const int si = oi.at(a.dst), ti = oi.at(a.src); // restriction is contravariant
        SMap Xa = diagram_arrow(X, a.id);
        SMap m;
        m.source = gobjs[si];
        m.target = gobjs[ti];
        for (const auto& id : flat_ids(gobjs[si])) {
            const int n = gobjs[si].dimension_of(id);
            const SMap& g = fcs[si].element(id);
            const ProductResult& Pd = fcs[si].level_product(n);
            const ProductResult& Ps = fcs[ti].level_product(n);
            SMap gp;
            gp.source = Ps.object;
            gp.target = Zmat;
            for (const auto& z : flat_ids(Ps.object)) {
                const auto& [x, b] = Ps.components.at(z);
                gp.on[z] = g.apply(Pd.pair_ref(Xa.apply(x), b));
            }
            m.on[id] = fcs[ti].ref_of(n, gp);
        }
        arrows.push_back({si, ti, std::move(m)});
    }
    return glue(gobjs, arrows, "ch", budgets).object;
}

} // namespace prosimpl
