#include "prosimpl/category.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace prosimpl {

const FinCategory::Mor& FinCategory::mor(const std::string& id) const {
    for (const auto& m : morphisms)
        if (m.id == id) return m;
    throw ValidationError("unknown morphism: " + id);
}

bool FinCategory::has_object(const std::string& o) const {
    return std::find(objects.begin(), objects.end(), o) != objects.end();
}

bool FinCategory::is_identity(const std::string& m) const {
    for (const auto& [obj, id] : identity)
        if (id == m) return true;
    return false;
}

std::string FinCategory::compose_mor(const std::string& g, const std::string& f) const {
    const Mor& mf = mor(f);
    const Mor& mg = mor(g);
    if (mf.dst != mg.src) throw ValidationError("morphisms not composable: " + g + " after " + f);
    if (is_identity(f)) return g;
    if (is_identity(g)) return f;
    auto it = table.find({g, f});
    if (it == table.end()) throw ValidationError("composition table missing entry " + g + "∘" + f);
    return it->second;
}

Report validate_category(const FinCategory& C) {
    Report rep;
    std::set<std::string> obj_set(C.objects.begin(), C.objects.end());
    if (obj_set.size() != C.objects.size()) rep.push_back({"objects", "duplicate object id"});
    std::set<std::string> mor_ids;
    for (const auto& m : C.morphisms) {
        if (!mor_ids.insert(m.id).second) rep.push_back({m.id, "duplicate morphism id"});
        if (!obj_set.count(m.src) || !obj_set.count(m.dst))
            rep.push_back({m.id, "endpoint is not an object"});
    }
    for (const auto& o : C.objects) {
        auto it = C.identity.find(o);
        if (it == C.identity.end() || !mor_ids.count(it->second)) {
            rep.push_back({o, "missing identity morphism"});
            continue;
        }
        const auto& m = C.mor(it->second);
        if (m.src != o || m.dst != o) rep.push_back({o, "identity has wrong endpoints"});
    }
    if (!rep.empty()) return rep;
    // totality and endpoints of the table
    for (const auto& f : C.morphisms) {
        for (const auto& g : C.morphisms) {
            if (f.dst != g.src) continue;
            std::string gf;
            try {
                gf = C.compose_mor(g.id, f.id);
            } catch (const ValidationError& e) {
                rep.push_back({g.id + "∘" + f.id, e.what()});
                continue;
            }
            const auto& m = C.mor(gf);
            if (m.src != f.src || m.dst != g.dst)
                rep.push_back({g.id + "∘" + f.id, "composite has wrong endpoints"});
        }
    }
    if (!rep.empty()) return rep;
    // identity laws
    for (const auto& f : C.morphisms) {
        if (C.compose_mor(C.identity.at(f.dst), f.id) != f.id ||
            C.compose_mor(f.id, C.identity.at(f.src)) != f.id)
            rep.push_back({f.id, "identity law fails"});
    }
    // associativity, exhaustively
    for (const auto& f : C.morphisms)
        for (const auto& g : C.morphisms) {
            if (f.dst != g.src) continue;
            for (const auto& h : C.morphisms) {
                if (g.dst != h.src) continue;
                if (C.compose_mor(h.id, C.compose_mor(g.id, f.id)) !=
                    C.compose_mor(C.compose_mor(h.id, g.id), f.id))
                    rep.push_back({h.id + "∘" + g.id + "∘" + f.id, "associativity fails"});
            }
        }
    return rep;
}

Report validate_functor(const Functor& F) {
    Report rep;
    for (const auto& o : F.source.objects) {
        auto it = F.on_objects.find(o);
        if (it == F.on_objects.end() || !F.target.has_object(it->second))
            rep.push_back({o, "object image missing or invalid"});
    }
    for (const auto& m : F.source.morphisms) {
        auto it = F.on_morphisms.find(m.id);
        if (it == F.on_morphisms.end()) {
            rep.push_back({m.id, "morphism image missing"});
            continue;
        }
        const FinCategory::Mor* tm;
        try {
            tm = &F.target.mor(it->second);
        } catch (const ValidationError&) {
            rep.push_back({m.id, "morphism image unknown in target"});
            continue;
        }
        if (tm->src != F.on_objects.at(m.src) || tm->dst != F.on_objects.at(m.dst))
            rep.push_back({m.id, "image endpoints do not match"});
    }
    if (!rep.empty()) return rep;
    for (const auto& [o, id] : F.source.identity)
        if (F.on_morphisms.at(id) != F.target.identity.at(F.on_objects.at(o)))
            rep.push_back({id, "identity not preserved"});
    for (const auto& f : F.source.morphisms)
        for (const auto& g : F.source.morphisms) {
            if (f.dst != g.src) continue;
            if (F.on_morphisms.at(F.source.compose_mor(g.id, f.id)) !=
                F.target.compose_mor(F.on_morphisms.at(g.id), F.on_morphisms.at(f.id)))
                rep.push_back({g.id + "∘" + f.id, "composition not preserved"});
        }
    return rep;
}

Functor identity_functor(const FinCategory& C) {
    Functor F;
    F.source = C;
    F.target = C;
    for (const auto& o : C.objects) F.on_objects[o] = o;
    for (const auto& m : C.morphisms) F.on_morphisms[m.id] = m.id;
    return F;
}

Functor compose_functors(const Functor& second, const Functor& first) {
    Functor F;
    F.source = first.source;
    F.target = second.target;
    for (const auto& [o, v] : first.on_objects) F.on_objects[o] = second.on_objects.at(v);
    for (const auto& [m, v] : first.on_morphisms) F.on_morphisms[m] = second.on_morphisms.at(v);
    return F;
}

FinCategory poset_category(const std::vector<std::string>& objects,
                           const std::vector<std::pair<std::string, std::string>>& less_than) {
    // transitive closure of the relation, reflexive identities
    std::set<std::pair<std::string, std::string>> rel(less_than.begin(), less_than.end());
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<std::pair<std::string, std::string>> add;
        for (const auto& [a, b] : rel)
            for (const auto& [c, d] : rel)
                if (b == c && !rel.count({a, d})) add.insert({a, d});
        if (!add.empty()) {
            changed = true;
            rel.insert(add.begin(), add.end());
        }
    }
    FinCategory C;
    C.objects = objects;
    for (const auto& o : objects) {
        std::string id = "id:" + o;
        C.morphisms.push_back({id, o, o});
        C.identity[o] = id;
    }
    for (const auto& [a, b] : rel) {
        if (a == b) throw ValidationError("poset relation is not irreflexive at " + a);
        C.morphisms.push_back({a + "<=" + b, a, b});
    }
    for (const auto& [a, b] : rel)
        for (const auto& [c, d] : rel)
            if (b == c) C.table[{c + "<=" + d, a + "<=" + b}] = a + "<=" + d;
    return C;
}

Report validate_poset(const FinCategory& C) {
    Report rep = validate_category(C);
    if (!rep.empty()) return rep;
    std::map<std::pair<std::string, std::string>, int> homs;
    for (const auto& m : C.morphisms) homs[{m.src, m.dst}]++;
    for (const auto& [k, n] : homs) {
        if (n > 1) rep.push_back({k.first + "->" + k.second, "more than one morphism"});
        if (k.first != k.second && homs.count({k.second, k.first}))
            rep.push_back({k.first + "->" + k.second, "antisymmetry fails"});
    }
    return rep;
}

bool poset_leq(const FinCategory& P, const std::string& a, const std::string& b) {
    if (a == b) return true;
    for (const auto& m : P.morphisms)
        if (m.src == a && m.dst == b) return true;
    return false;
}

bool is_loop_free(const FinCategory& C) {
    // cycle through non-identity morphisms => nerve is infinite-dimensional
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& m : C.morphisms)
        if (!C.is_identity(m.id)) adj[m.src].push_back(m.dst);
    std::map<std::string, int> state; // 0 new, 1 open, 2 done
    std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
        state[v] = 1;
        for (const auto& w : adj[v]) {
            if (state[w] == 1) return false;
            if (state[w] == 0 && !dfs(w)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (const auto& o : C.objects)
        if (state[o] == 0 && !dfs(o)) return false;
    return true;
}

bool is_groupoid(const FinCategory& C) {
    if (!validate_category(C).empty()) return false;
    for (const auto& m : C.morphisms) {
        bool ok = false;
        for (const auto& w : C.morphisms) {
            if (w.src != m.dst || w.dst != m.src) continue;
            if (C.compose_mor(w.id, m.id) == C.identity.at(m.src) &&
                C.compose_mor(m.id, w.id) == C.identity.at(m.dst)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

bool is_left_filtered(const FinCategory& C) {
    if (C.objects.empty()) return false;
    // pairwise spans
    for (const auto& a : C.objects)
        for (const auto& b : C.objects) {
            bool found = false;
            for (const auto& c : C.objects) {
                bool to_a = false, to_b = false;
                for (const auto& m : C.morphisms) {
                    if (m.src == c && m.dst == a) to_a = true;
                    if (m.src == c && m.dst == b) to_b = true;
                }
                if (to_a && to_b) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    // equalizing morphisms for parallel pairs
    for (const auto& f : C.morphisms)
        for (const auto& g : C.morphisms) {
            if (f.src != g.src || f.dst != g.dst || f.id == g.id) continue;
            bool found = false;
            for (const auto& h : C.morphisms) {
                if (h.dst != f.src) continue;
                if (C.compose_mor(f.id, h.id) == C.compose_mor(g.id, h.id)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    return true;
}

namespace {

std::string string_id(const std::vector<std::string>& mors) {
    std::ostringstream os;
    for (std::size_t i = 0; i < mors.size(); ++i) os << (i ? "|" : "") << mors[i];
    return os.str();
}

// d_i of a composable string (f1, ..., fn)
std::vector<std::string> string_face(const FinCategory& C, const std::vector<std::string>& str,
                                     int i) {
    int n = static_cast<int>(str.size());
    std::vector<std::string> out;
    if (i == 0) {
        out.assign(str.begin() + 1, str.end());
    } else if (i == n) {
        out.assign(str.begin(), str.end() - 1);
    } else {
        out.assign(str.begin(), str.begin() + (i - 1));
        out.push_back(C.compose_mor(str[i], str[i - 1]));
        out.insert(out.end(), str.begin() + i + 1, str.end());
    }
    return out;
}

std::string string_start(const FinCategory& C, const std::vector<std::string>& str,
                         const std::string& fallback) {
    return str.empty() ? fallback : C.mor(str.front()).src;
}

} // namespace

SimplexRef nerve_string_ref(const FinCategory& C, const std::string& at_object,
                            const std::vector<std::string>& mors) {
    // An identity at slot p duplicates vertex p, so the string is the image
    // of the identity-free string under s_{p1} ∘ ... for the slots p.
    std::vector<std::string> base;
    DegeneracyWord word;
    for (int p = 0; p < static_cast<int>(mors.size()); ++p) {
        if (C.is_identity(mors[p]))
            word.push_back(p);
        else
            base.push_back(mors[p]);
    }
    // apply_word applies innermost first; build via repeated apply_degeneracy
    std::string base_id = base.empty() ? string_start(C, mors, at_object) : string_id(base);
    SimplexRef r{{}, base_id, static_cast<int>(base.size())};
    for (int j : word) r = apply_degeneracy(r, j);
    return r;
}

FinSSet nerve(const FinCategory& C, std::optional<int> trunc) {
    if (!trunc.has_value() && !is_loop_free(C))
        throw ValidationError("category has loops; nerve requires a truncation dimension");
    FinSSet N;
    N.cap = trunc.has_value() ? *trunc : -1;
    std::vector<std::string> objs = C.objects;
    std::sort(objs.begin(), objs.end());
    for (const auto& o : objs) N.add_simplex(0, o);

    // enumerate non-degenerate strings dimension by dimension
    std::vector<std::vector<std::string>> cur; // strings of length n
    for (const auto& m : C.morphisms)
        if (!C.is_identity(m.id)) cur.push_back({m.id});
    int n = 1;
    while (!cur.empty() && (N.complete() || n <= N.cap)) {
        std::sort(cur.begin(), cur.end());
        for (const auto& str : cur) {
            std::vector<SimplexRef> fs;
            for (int i = 0; i <= n; ++i) {
                auto f = string_face(C, str, i);
                std::string at = f.empty()
                                     ? (i == 0 ? C.mor(str.front()).dst : C.mor(str.front()).src)
                                     : C.mor(f.front()).src;
                fs.push_back(nerve_string_ref(C, at, f));
            }
            N.add_simplex(n, string_id(str), std::move(fs));
        }
        // extend on the right by non-identity morphisms
        std::vector<std::vector<std::string>> next;
        for (const auto& str : cur) {
            const auto& last = C.mor(str.back());
            for (const auto& m : C.morphisms) {
                if (C.is_identity(m.id) || m.src != last.dst) continue;
                auto ext = str;
                ext.push_back(m.id);
                next.push_back(std::move(ext));
            }
        }
        cur = std::move(next);
        ++n;
    }
    N.reindex();
    return N;
}

SMap nerve_map(const Functor& F, std::optional<int> trunc) {
    SMap f;
    f.source = nerve(F.source, trunc);
    f.target = nerve(F.target, trunc);
    for (const auto& level : f.source.simplices) {
        for (const auto& id : level) {
            int n = f.source.dimension_of(id);
            if (n == 0) {
                f.on[id] = SimplexRef{{}, F.on_objects.at(id), 0};
                continue;
            }
            std::vector<std::string> image;
            std::istringstream is(id);
            std::string tok;
            while (std::getline(is, tok, '|')) image.push_back(F.on_morphisms.at(tok));
            std::string start = F.target.mor(image.front()).src;
            f.on[id] = nerve_string_ref(F.target, start, image);
        }
    }
    return f;
}

std::string to_dot(const FinCategory& C, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    std::vector<std::string> objs = C.objects;
    std::sort(objs.begin(), objs.end());
    for (const auto& o : objs) os << "  \"" << o << "\";\n";
    std::vector<FinCategory::Mor> ms = C.morphisms;
    std::sort(ms.begin(), ms.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& m : ms)
        if (!C.is_identity(m.id))
            os << "  \"" << m.src << "\" -> \"" << m.dst << "\" [label=\"" << m.id << "\"];\n";
    os << "}\n";
    return os.str();
}

FinCategory terminal_category() {
    FinCategory C;
    C.objects = {"*"};
    C.morphisms = {{"id:*", "*", "*"}};
    C.identity["*"] = "id:*";
    return C;
}

FinCategory arrow_category() { return poset_category({"0", "1"}, {{"0", "1"}}); }

FinCategory cospan_category() {
    return poset_category({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
}

FinCategory cyclic_group_category(int order) {
    if (order < 1) throw ValidationError("group order must be positive");
    FinCategory C;
    C.objects = {"*"};
    for (int i = 0; i < order; ++i) {
        std::string id = i == 0 ? "e" : "g" + std::to_string(i);
        C.morphisms.push_back({id, "*", "*"});
    }
    C.identity["*"] = "e";
    auto name = [&](int i) { return i == 0 ? std::string("e") : "g" + std::to_string(i); };
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) C.table[{name(i), name(j)}] = name((i + j) % order);
    return C;
}

FinCategory discrete_category(int n) {
    FinCategory C;
    for (int i = 0; i < n; ++i) {
        std::string o = "o" + std::to_string(i);
        C.objects.push_back(o);
        C.morphisms.push_back({"id:" + o, o, o});
        C.identity[o] = "id:" + o;
    }
    return C;
}

} // namespace prosimpl
