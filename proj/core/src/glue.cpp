#include "prosimpl/glue.hpp"

#include <algorithm>
#include <numeric>

#include "prosimpl/assemble.hpp"

namespace prosimpl {

namespace {

struct UnionFind {
    std::unordered_map<std::string, std::string> parent;
    const std::string& find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return parent.find(x)->second;
        }
        if (it->second == x) return it->second;
        const std::string root = find(it->second);
        parent[x] = root;
        return parent.find(x)->second;
    }
    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        // keep the lexicographically smaller root for determinism
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    }
};

std::string elem_key(int obj, const SimplexRef& r) {
    return "o" + std::to_string(obj) + ":" + ref_key(r);
}

} // namespace

GlueResult glue(const std::vector<FinSSet>& objects, const std::vector<GlueArrow>& arrows,
                const std::string& prefix, const Budgets& budgets) {
    int top = 0;
    int cap = -1;
    for (std::size_t o = 0; o < objects.size(); ++o) {
        // mixed presentations have no well-defined colimit: either every
        // object is complete, or all share one truncation cap.
        if (objects[o].cap != objects.front().cap)
            throw ValidationError("glue requires a uniform truncation cap");
        cap = objects[o].cap;
        top = std::max(top, objects[o].dim());
    }
    for (const auto& a : arrows) {
        if (a.src < 0 || a.src >= static_cast<int>(objects.size()) || a.dst < 0 ||
            a.dst >= static_cast<int>(objects.size()))
            throw ValidationError("glue arrow out of range");
    }

    // one union-find per dimension, over all simplices of all objects
    std::vector<UnionFind> uf(top + 1);
    for (int n = 0; n <= top; ++n) {
        for (const auto& a : arrows) {
            for (const auto& r : all_refs(objects[a.src], n)) {
                SimplexRef img = a.map.apply(r);
                uf[n].unite(elem_key(a.src, r), elem_key(a.dst, img));
            }
        }
    }

    // payload: class representative key -> (object, ref)
    std::unordered_map<std::string, std::pair<int, SimplexRef>> payload;
    auto canon = [&](int n, int obj, const SimplexRef& r) {
        const std::string& root = uf[n].find(elem_key(obj, r));
        payload.emplace(root, std::make_pair(obj, r));
        return root;
    };

    LevelSpec spec;
    spec.top = top;
    spec.elements = [&](int n) {
        std::vector<std::string> keys;
        for (int o = 0; o < static_cast<int>(objects.size()); ++o)
            for (const auto& r : all_refs(objects[o], n)) keys.push_back(canon(n, o, r));
        return keys;
    };
    spec.face = [&](int n, const std::string& key, int i) {
        const auto& [o, r] = payload.at(key);
        return canon(n - 1, o, apply_face(objects[o], r, i));
    };
    spec.degen = [&](int n, const std::string& key, int j) {
        const auto& [o, r] = payload.at(key);
        return canon(n + 1, o, apply_degeneracy(r, j));
    };

    Assembled asm_ = assemble(spec, prefix, cap, budgets);

    GlueResult out;
    out.object = std::move(asm_.sset);
    for (const auto& [id, key] : asm_.id_to_key) {
        const auto& [o, r] = payload.at(key);
        // non-degenerate classes contain only word-empty members
        out.rep[id] = {o, r.base};
    }
    for (int o = 0; o < static_cast<int>(objects.size()); ++o) {
        SMap leg;
        leg.source = objects[o];
        leg.target = out.object;
        for (const auto& level : objects[o].simplices) {
            for (const auto& id : level) {
                int n = objects[o].dimension_of(id);
                leg.on[id] = asm_.nf(n, uf[n].find(elem_key(o, SimplexRef{{}, id, n})));
            }
        }
        out.cocone.push_back(std::move(leg));
    }
    return out;
}

PushoutResult pushout(const SMap& f, const SMap& g, const Budgets& budgets) {
    if (f.source.simplices != g.source.simplices)
        throw ValidationError("pushout legs must share their source");
    GlueArrow af{0, 1, f}, ag{0, 2, g};
    GlueResult r = glue({f.source, f.target, g.target}, {af, ag}, "p", budgets);
    return PushoutResult{std::move(r.object), r.cocone[1], r.cocone[2]};
}

Report validate_diagram(const DiagramOverCategory& D) {
    Report rep = validate_category(D.index);
    if (!rep.empty()) return rep;
    for (const auto& o : D.index.objects)
        if (!D.objects.count(o)) rep.push_back({o, "no value assigned to index object"});
    if (!rep.empty()) return rep;
    auto arrow_of = [&](const std::string& m) -> SMap {
        auto it = D.arrows.find(m);
        if (it != D.arrows.end()) return it->second;
        if (D.index.is_identity(m)) return identity_map(D.objects.at(D.index.mor(m).src));
        throw ValidationError("no map assigned to morphism " + m);
    };
    for (const auto& m : D.index.morphisms) {
        SMap f;
        try {
            f = arrow_of(m.id);
        } catch (const ValidationError& e) {
            rep.push_back({m.id, e.what()});
            continue;
        }
        Report mr = validate_map(f);
        if (!mr.empty()) rep.push_back({m.id, "arrow is not a simplicial map"});
        if (f.source.counts() != D.objects.at(m.src).counts() ||
            f.target.counts() != D.objects.at(m.dst).counts())
            rep.push_back({m.id, "arrow endpoints do not match diagram values"});
    }
    if (!rep.empty()) return rep;
    for (const auto& [o, id] : D.index.identity) {
        if (D.arrows.count(id) && !same_assignment(D.arrows.at(id), identity_map(D.objects.at(o))))
            rep.push_back({id, "identity morphism carries a non-identity map"});
    }
    for (const auto& f : D.index.morphisms)
        for (const auto& g : D.index.morphisms) {
            if (f.dst != g.src) continue;
            const std::string gf = D.index.compose_mor(g.id, f.id);
            if (!same_assignment(arrow_of(gf), compose(arrow_of(g.id), arrow_of(f.id))))
                rep.push_back({g.id + "∘" + f.id, "functoriality fails"});
        }
    return rep;
}

ColimitResult colimit(const DiagramOverCategory& D, const Budgets& budgets) {
    Report rep = validate_diagram(D);
    if (!rep.empty())
        throw ValidationError("non-functorial diagram: " + rep.front().where + ": " +
                              rep.front().message);
    std::vector<std::string> order = D.index.objects;
    std::sort(order.begin(), order.end());
    std::map<std::string, int> pos;
    std::vector<FinSSet> objs;
    for (const auto& o : order) {
        pos[o] = static_cast<int>(objs.size());
        objs.push_back(D.objects.at(o));
    }
    std::vector<GlueArrow> arrows;
    for (const auto& m : D.index.morphisms) {
        if (D.index.is_identity(m.id)) continue;
        auto it = D.arrows.find(m.id);
        if (it == D.arrows.end()) throw ValidationError("no map assigned to morphism " + m.id);
        arrows.push_back(GlueArrow{pos[m.src], pos[m.dst], it->second});
    }
    GlueResult r = glue(objs, arrows, "c", budgets);
    ColimitResult out;
    out.object = std::move(r.object);
    for (const auto& o : order) out.cocone[o] = r.cocone[pos[o]];
    return out;
}

} // namespace prosimpl
