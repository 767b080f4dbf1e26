#include "prosimpl/sset.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "prosimpl/assemble.hpp"

namespace prosimpl {

Budgets default_budgets() {
    Budgets b;
    if (const char* env = std::getenv("PROSIMPL_MAX_SIMPLICES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) b.max_simplices = static_cast<std::size_t>(v);
    }
    return b;
}

bool is_valid_word(const DegeneracyWord& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] <= w[i + 1]) return false;
    return w.empty() || w.back() >= 0;
}

std::string ref_key(const SimplexRef& r) {
    if (r.word.empty()) return r.base;
    std::ostringstream os;
    os << "s";
    for (std::size_t i = 0; i < r.word.size(); ++i) os << (i ? "," : "") << r.word[i];
    os << "(" << r.base << ")";
    return os.str();
}

int FinSSet::dimension_of(const std::string& id) const {
    auto it = dim_of.find(id);
    if (it == dim_of.end()) throw ValidationError("unknown simplex id: " + id);
    return it->second;
}

std::vector<std::size_t> FinSSet::counts() const {
    std::vector<std::size_t> c;
    c.reserve(simplices.size());
    for (const auto& level : simplices) c.push_back(level.size());
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

std::size_t FinSSet::total() const {
    std::size_t t = 0;
    for (const auto& level : simplices) t += level.size();
    return t;
}

long long FinSSet::euler_characteristic() const {
    long long chi = 0;
    long long sign = 1;
    for (const auto& level : simplices) {
        chi += sign * static_cast<long long>(level.size());
        sign = -sign;
    }
    return chi;
}

void FinSSet::add_simplex(int n, const std::string& id, std::vector<SimplexRef> fs) {
    if (n < 0) throw ValidationError("negative dimension");
    if (dim_of.count(id)) throw ValidationError("duplicate simplex id: " + id);
    if (static_cast<int>(simplices.size()) <= n) simplices.resize(n + 1);
    simplices[n].push_back(id);
    dim_of[id] = n;
    if (n >= 1) faces[id] = std::move(fs);
}

void FinSSet::reindex() {
    dim_of.clear();
    for (int n = 0; n < static_cast<int>(simplices.size()); ++n) {
        std::sort(simplices[n].begin(), simplices[n].end());
        for (const auto& id : simplices[n]) dim_of[id] = n;
    }
}

SimplexRef apply_degeneracy(const SimplexRef& r, int j) {
    if (j < 0 || j > r.dim)
        throw MalformedExpression("degeneracy index " + std::to_string(j) +
                                  " out of range for dimension " + std::to_string(r.dim));
    // s_i s_j = s_{j+1} s_i for i <= j: bump every entry >= j, then insert.
    SimplexRef out{DegeneracyWord{}, r.base, r.dim + 1};
    out.word.reserve(r.word.size() + 1);
    std::size_t pos = 0;
    int insert = j;
    while (pos < r.word.size() && insert <= r.word[pos]) {
        out.word.push_back(r.word[pos] + 1);
        ++pos;
    }
    out.word.push_back(insert);
    for (; pos < r.word.size(); ++pos) out.word.push_back(r.word[pos]);
    return out;
}

SimplexRef apply_word(const DegeneracyWord& w, const SimplexRef& r) {
    SimplexRef out = r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out = apply_degeneracy(out, *it);
    return out;
}

SimplexRef apply_face(const FinSSet& X, const SimplexRef& r, int i) {
    if (i < 0 || i > r.dim)
        throw MalformedExpression("face index " + std::to_string(i) +
                                  " out of range for dimension " + std::to_string(r.dim));
    if (r.word.empty()) {
        if (r.dim == 0) throw MalformedExpression("vertex has no faces");
        return X.faces.at(r.base)[i];
    }
    int j = r.word.front();
    SimplexRef inner{DegeneracyWord(r.word.begin() + 1, r.word.end()), r.base, r.dim - 1};
    if (i == j || i == j + 1) return inner;
    if (i < j) return apply_degeneracy(apply_face(X, inner, i), j - 1);
    return apply_degeneracy(apply_face(X, inner, i - 1), j);
}

SimplexRef normalize(const FinSSet& X, const RawExpr& e) {
    if (!is_valid_word(e.base.word)) throw MalformedExpression("non-decreasing degeneracy word");
    SimplexRef r = e.base;
    for (const auto& op : e.ops)
        r = op.is_face ? apply_face(X, r, op.index) : apply_degeneracy(r, op.index);
    return r;
}

namespace {

// All strictly decreasing words of length t with entries in [0, n-1].
void decreasing_words(int n, int t, std::vector<DegeneracyWord>& out) {
    std::vector<int> combo(t);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == t) {
            out.push_back(DegeneracyWord(combo.rbegin(), combo.rend()));
            return;
        }
        for (int v = start; v < n; ++v) {
            combo[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
}

} // namespace

std::vector<SimplexRef> all_refs(const FinSSet& X, int n) {
    if (!X.complete() && n > X.cap)
        throw BudgetError("simplex enumeration above truncation cap");
    std::vector<SimplexRef> out;
    for (int p = 0; p <= n && p < static_cast<int>(X.simplices.size()); ++p) {
        std::vector<DegeneracyWord> words;
        decreasing_words(n, n - p, words);
        for (const auto& id : X.simplices[p])
            for (const auto& w : words) out.push_back(SimplexRef{w, id, n});
    }
    return out;
}

SimplexRef SMap::apply(const SimplexRef& r) const {
    auto it = on.find(r.base);
    if (it == on.end()) throw ValidationError("map undefined on simplex: " + r.base);
    return apply_word(r.word, it->second);
}

SMap identity_map(const FinSSet& X) {
    SMap f;
    f.source = X;
    f.target = X;
    for (const auto& level : X.simplices)
        for (const auto& id : level)
            f.on[id] = SimplexRef{{}, id, X.dimension_of(id)};
    return f;
}

SMap compose(const SMap& second, const SMap& first) {
    SMap out;
    out.source = first.source;
    out.target = second.target;
    for (const auto& [id, ref] : first.on) out.on[id] = second.apply(ref);
    return out;
}

bool same_assignment(const SMap& f, const SMap& g) {
    if (f.on.size() != g.on.size()) return false;
    for (const auto& [id, ref] : f.on) {
        auto it = g.on.find(id);
        if (it == g.on.end() || !(it->second == ref)) return false;
    }
    return true;
}

bool is_isomorphism(const SMap& f) {
    if (!validate_map(f).empty()) return false;
    int top = std::max(f.source.dim(), f.target.dim());
    for (int n = 0; n <= top; ++n) {
        if (f.source.count(n) != f.target.count(n)) return false;
        std::vector<std::string> hit;
        for (std::size_t k = 0; k < f.source.count(n); ++k) {
            const auto& ref = f.on.at(f.source.simplices[n][k]);
            if (ref.degenerate()) return false;
            hit.push_back(ref.base);
        }
        std::sort(hit.begin(), hit.end());
        if (std::unique(hit.begin(), hit.end()) != hit.end()) return false;
    }
    return true;
}

namespace {

bool check_ref(const FinSSet& X, const SimplexRef& r, int expect_dim, std::string& msg) {
    if (!is_valid_word(r.word)) {
        msg = "degeneracy word not strictly decreasing";
        return false;
    }
    if (!X.has(r.base)) {
        msg = "unknown base simplex: " + r.base;
        return false;
    }
    int bd = X.dimension_of(r.base);
    if (bd + static_cast<int>(r.word.size()) != expect_dim || r.dim != expect_dim) {
        msg = "dimension mismatch in reference to " + r.base;
        return false;
    }
    if (!r.word.empty() && r.word.front() > expect_dim - 1) {
        msg = "degeneracy index out of range in reference to " + r.base;
        return false;
    }
    return true;
}

} // namespace

Report validate(const FinSSet& X) {
    Report rep;
    for (int n = 0; n < static_cast<int>(X.simplices.size()); ++n) {
        for (const auto& id : X.simplices[n]) {
            if (n == 0) continue;
            auto it = X.faces.find(id);
            if (it == X.faces.end() || static_cast<int>(it->second.size()) != n + 1) {
                rep.push_back({id, "missing or wrong-arity face list"});
                continue;
            }
            bool ok = true;
            for (const auto& f : it->second) {
                std::string msg;
                if (!check_ref(X, f, n - 1, msg)) {
                    rep.push_back({id, msg});
                    ok = false;
                }
            }
            if (!ok || n < 2) continue;
            SimplexRef top{{}, id, n};
            for (int j = 1; j <= n; ++j) {
                for (int i = 0; i < j; ++i) {
                    SimplexRef a = apply_face(X, apply_face(X, top, j), i);
                    SimplexRef b = apply_face(X, apply_face(X, top, i), j - 1);
                    if (!(a == b)) {
                        rep.push_back({id, "simplicial identity d_" + std::to_string(i) + "d_" +
                                               std::to_string(j) + " violated"});
                    }
                }
            }
        }
    }
    return rep;
}

Report validate_map(const SMap& f) {
    Report rep;
    for (const auto& level : f.source.simplices) {
        for (const auto& id : level) {
            int n = f.source.dimension_of(id);
            auto it = f.on.find(id);
            if (it == f.on.end()) {
                rep.push_back({id, "no image assigned"});
                continue;
            }
            std::string msg;
            if (!check_ref(f.target, it->second, n, msg)) {
                rep.push_back({id, msg});
                continue;
            }
            if (n == 0) continue;
            SimplexRef top{{}, id, n};
            for (int i = 0; i <= n; ++i) {
                SimplexRef lhs = f.apply(apply_face(f.source, top, i));
                SimplexRef rhs = apply_face(f.target, it->second, i);
                if (!(lhs == rhs))
                    rep.push_back({id, "face d_" + std::to_string(i) + " does not commute"});
            }
        }
    }
    return rep;
}

// --- standard generators ----------------------------------------------------

namespace {

std::string subset_id(const std::vector<int>& vs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "|" : "") << vs[i];
    return os.str();
}

void add_subset_simplices(FinSSet& X, const std::vector<std::vector<int>>& subsets) {
    for (const auto& vs : subsets) {
        int n = static_cast<int>(vs.size()) - 1;
        std::vector<SimplexRef> fs;
        if (n >= 1) {
            for (int i = 0; i <= n; ++i) {
                std::vector<int> face = vs;
                face.erase(face.begin() + i);
                fs.push_back(SimplexRef{{}, subset_id(face), n - 1});
            }
        }
        X.add_simplex(n, subset_id(vs), std::move(fs));
    }
    X.reindex();
}

void subsets_of(int n, int max_size, const std::function<bool(const std::vector<int>&)>& keep,
                std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (!cur.empty() && keep(cur)) out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_size) return;
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

} // namespace

FinSSet standard_simplex(int n) {
    if (n < 0) throw ValidationError("standard_simplex: negative dimension");
    FinSSet X;
    std::vector<std::vector<int>> subsets;
    subsets_of(n, n + 1, [](const std::vector<int>&) { return true; }, subsets);
    add_subset_simplices(X, subsets);
    return X;
}

FinSSet boundary(int n) {
    if (n < 0) throw ValidationError("boundary: negative dimension");
    FinSSet X;
    std::vector<std::vector<int>> subsets;
    subsets_of(n, n, [](const std::vector<int>&) { return true; }, subsets);
    add_subset_simplices(X, subsets);
    return X;
}

FinSSet horn(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw ValidationError("horn: bad (n, k)");
    // faces of Δⁿ other than the one opposite vertex k, and their subsets
    FinSSet X;
    std::vector<std::vector<int>> subsets;
    subsets_of(n, n,
               [&](const std::vector<int>& vs) {
                   if (static_cast<int>(vs.size()) == n + 1) return false;
                   // contained in d_i-face for some i != k, i.e. misses some vertex != k
                   for (int v = 0; v <= n; ++v) {
                       if (v == k) continue;
                       if (!std::binary_search(vs.begin(), vs.end(), v)) return true;
                   }
                   return false;
               },
               subsets);
    add_subset_simplices(X, subsets);
    return X;
}

FinSSet circle() {
    FinSSet X;
    X.add_simplex(0, "v");
    X.add_simplex(1, "e", {SimplexRef{{}, "v", 0}, SimplexRef{{}, "v", 0}});
    X.reindex();
    return X;
}

SimplexRef delta_ref(int n, const std::vector<int>& seq) {
    if (seq.empty()) throw MalformedExpression("empty vertex sequence");
    std::vector<int> support;
    DegeneracyWord word;
    for (std::size_t p = 0; p < seq.size(); ++p) {
        if (seq[p] < 0 || seq[p] > n) throw MalformedExpression("vertex out of range");
        if (p + 1 < seq.size()) {
            if (seq[p] > seq[p + 1]) throw MalformedExpression("sequence not monotone");
            if (seq[p] == seq[p + 1]) word.push_back(static_cast<int>(p));
        }
        if (support.empty() || support.back() != seq[p]) support.push_back(seq[p]);
    }
    std::reverse(word.begin(), word.end());
    return SimplexRef{word, subset_id(support), static_cast<int>(seq.size()) - 1};
}

std::vector<int> delta_seq(int /*n*/, const SimplexRef& r) {
    std::vector<int> seq;
    std::istringstream is(r.base);
    std::string tok;
    while (std::getline(is, tok, '|')) seq.push_back(std::stoi(tok));
    for (auto it = r.word.rbegin(); it != r.word.rend(); ++it)
        seq.insert(seq.begin() + *it, seq[*it]);
    return seq;
}

SMap ordinal_smap(const std::vector<int>& theta, int n) {
    int m = static_cast<int>(theta.size()) - 1;
    for (std::size_t p = 0; p + 1 < theta.size(); ++p)
        if (theta[p] > theta[p + 1]) throw ValidationError("ordinal map not monotone");
    SMap f;
    f.source = standard_simplex(m);
    f.target = standard_simplex(n);
    for (const auto& level : f.source.simplices) {
        for (const auto& id : level) {
            std::vector<int> vs;
            std::istringstream is(id);
            std::string tok;
            while (std::getline(is, tok, '|')) vs.push_back(theta.at(std::stoi(tok)));
            f.on[id] = delta_ref(n, vs);
        }
    }
    return f;
}

SMap characteristic_map(const FinSSet& X, const std::string& id) {
    int n = X.dimension_of(id);
    SMap f;
    f.source = standard_simplex(n);
    f.target = X;
    for (const auto& level : f.source.simplices) {
        for (const auto& sid : level) {
            std::vector<int> vs;
            std::istringstream is(sid);
            std::string tok;
            while (std::getline(is, tok, '|')) vs.push_back(std::stoi(tok));
            SimplexRef r{{}, id, n};
            for (int v = n; v >= 0; --v)
                if (!std::binary_search(vs.begin(), vs.end(), v)) r = apply_face(X, r, v);
            f.on[sid] = r;
        }
    }
    return f;
}

FinSSet truncate(const FinSSet& X, int D) {
    if (D < 0) throw ValidationError("truncation dimension must be non-negative");
    FinSSet out;
    for (int n = 0; n <= D && n < static_cast<int>(X.simplices.size()); ++n)
        for (const auto& id : X.simplices[n]) out.add_simplex(n, id, n >= 1 ? X.faces.at(id) : std::vector<SimplexRef>{});
    out.cap = D;
    out.kan = X.kan;
    out.reindex();
    return out;
}

SMap inclusion_map(const FinSSet& A, const FinSSet& B) {
    SMap f;
    f.source = A;
    f.target = B;
    for (const auto& level : A.simplices)
        for (const auto& id : level) {
            if (!B.has(id)) throw ValidationError("inclusion: simplex missing in codomain: " + id);
            f.on[id] = SimplexRef{{}, id, A.dimension_of(id)};
        }
    Report rep = validate_map(f);
    if (!rep.empty()) throw ValidationError("inclusion: faces disagree at " + rep.front().where);
    return f;
}

// --- products -----------------------------------------------------------------

namespace {

std::string pair_key(const SimplexRef& a, const SimplexRef& b) {
    return ref_key(a) + "*" + ref_key(b);
}

} // namespace

SimplexRef ProductResult::pair_ref(const SimplexRef& a, const SimplexRef& b) const {
    auto it = pair_nf.find(pair_key(a, b));
    if (it != pair_nf.end()) return it->second;
    // above the built range every pair is degenerate: strip a shared
    // degeneracy and recurse
    const FinSSet& X = proj1.target;
    const FinSSet& Y = proj2.target;
    const int d = a.dim;
    for (int j = 0; j < d; ++j) {
        const SimplexRef da = apply_face(X, a, j);
        const SimplexRef db = apply_face(Y, b, j);
        if (apply_degeneracy(da, j) == a && apply_degeneracy(db, j) == b)
            return apply_degeneracy(pair_ref(da, db), j);
    }
    throw ValidationError("pair outside built product range");
}

ProductResult product(const FinSSet& X, const FinSSet& Y, const Budgets& budgets) {
    int top;
    int out_cap = -1;
    if (X.complete() && Y.complete()) {
        top = X.dim() + Y.dim();
    } else {
        top = std::min(X.complete() ? X.dim() + Y.cap : X.cap,
                       Y.complete() ? Y.dim() + X.cap : Y.cap);
        out_cap = top;
    }
    if (top < 0) top = 0;

    std::unordered_map<std::string, std::pair<SimplexRef, SimplexRef>> payload;
    LevelSpec spec;
    spec.top = top;
    spec.elements = [&](int n) {
        std::vector<std::string> keys;
        auto xs = all_refs(X, n);
        auto ys = all_refs(Y, n);
        keys.reserve(xs.size() * ys.size());
        for (const auto& a : xs)
            for (const auto& b : ys) {
                std::string k = pair_key(a, b);
                payload.emplace(k, std::make_pair(a, b));
                keys.push_back(std::move(k));
            }
        return keys;
    };
    spec.face = [&](int /*n*/, const std::string& key, int i) {
        const auto& [a, b] = payload.at(key);
        SimplexRef fa = apply_face(X, a, i), fb = apply_face(Y, b, i);
        std::string k = pair_key(fa, fb);
        payload.emplace(k, std::make_pair(fa, fb));
        return k;
    };
    spec.degen = [&](int /*n*/, const std::string& key, int j) {
        const auto& [a, b] = payload.at(key);
        SimplexRef sa = apply_degeneracy(a, j), sb = apply_degeneracy(b, j);
        std::string k = pair_key(sa, sb);
        payload.emplace(k, std::make_pair(sa, sb));
        return k;
    };

    Assembled asm_ = assemble(spec, "x", out_cap, budgets);
    ProductResult out;
    out.object = std::move(asm_.sset);
    for (const auto& [id, key] : asm_.id_to_key) out.components[id] = payload.at(key);
    for (int n = 0; n <= top; ++n)
        for (const auto& [key, ref] : asm_.nf_by_level[n]) out.pair_nf[key] = ref;

    out.proj1.source = out.object;
    out.proj1.target = X;
    out.proj2.source = out.object;
    out.proj2.target = Y;
    for (const auto& [id, pr] : out.components) {
        out.proj1.on[id] = pr.first;
        out.proj2.on[id] = pr.second;
    }
    return out;
}

SMap product_map(const ProductResult& src, const ProductResult& dst, const SMap& f,
                 const SMap& g) {
    SMap out;
    out.source = src.object;
    out.target = dst.object;
    for (const auto& [id, pr] : src.components)
        out.on[id] = dst.pair_ref(f.apply(pr.first), g.apply(pr.second));
    return out;
}

// --- isomorphism search -------------------------------------------------------

namespace {

struct IsoCtx {
    const FinSSet* X;
    const FinSSet* Y;
    std::unordered_map<std::string, std::string> fwd, bwd;
};

std::unordered_map<std::string, long> refine_colors(const FinSSet& X) {
    std::unordered_map<std::string, long> color;
    for (const auto& level : X.simplices)
        for (const auto& id : level) color[id] = X.dimension_of(id);
    for (int round = 0; round < 6; ++round) {
        std::unordered_map<std::string, std::string> sig;
        for (const auto& level : X.simplices) {
            for (const auto& id : level) {
                std::ostringstream os;
                os << color[id] << "/";
                auto it = X.faces.find(id);
                if (it != X.faces.end())
                    for (const auto& f : it->second)
                        os << color[f.base] << ":" << f.word.size() << ",";
                sig[id] = os.str();
            }
        }
        // cofaces
        std::unordered_map<std::string, std::vector<long>> up;
        for (const auto& [id, fs] : X.faces)
            for (std::size_t i = 0; i < fs.size(); ++i)
                up[fs[i].base].push_back(color[id] * 100 + static_cast<long>(i));
        for (auto& [id, v] : up) {
            std::sort(v.begin(), v.end());
            std::ostringstream os;
            for (long x : v) os << x << ";";
            sig[id] += os.str();
        }
        std::map<std::string, long> canon;
        for (const auto& [id, s] : sig)
            if (!canon.count(s)) canon[s] = 0;
        long next = 0;
        for (auto& [s, c] : canon) c = next++;
        bool changed = false;
        for (const auto& [id, s] : sig) {
            long nc = canon[s];
            if (color[id] != nc) changed = true;
            color[id] = nc;
        }
        if (!changed) break;
    }
    return color;
}

bool iso_backtrack(IsoCtx& ctx, std::vector<std::pair<std::string, std::vector<std::string>>>& cand,
                   std::size_t idx) {
    if (idx == cand.size()) return true;
    const auto& [xid, options] = cand[idx];
    const FinSSet& X = *ctx.X;
    const FinSSet& Y = *ctx.Y;
    int n = X.dimension_of(xid);
    for (const auto& yid : options) {
        if (ctx.bwd.count(yid)) continue;
        bool ok = true;
        if (n >= 1) {
            const auto& xf = X.faces.at(xid);
            const auto& yf = Y.faces.at(yid);
            for (int i = 0; i <= n && ok; ++i) {
                auto it = ctx.fwd.find(xf[i].base);
                if (it == ctx.fwd.end()) { ok = false; break; } // faces matched first by dim order
                ok = (xf[i].word == yf[i].word) && (it->second == yf[i].base);
            }
        }
        if (!ok) continue;
        ctx.fwd[xid] = yid;
        ctx.bwd[yid] = xid;
        if (iso_backtrack(ctx, cand, idx + 1)) return true;
        ctx.fwd.erase(xid);
        ctx.bwd.erase(yid);
    }
    return false;
}

} // namespace

bool isomorphic(const FinSSet& X, const FinSSet& Y) {
    if (X.counts() != Y.counts()) return false;
    auto cx = refine_colors(X);
    auto cy = refine_colors(Y);
    // candidate lists per X simplex, in (dim, id) order
    std::vector<std::pair<std::string, std::vector<std::string>>> cand;
    for (int n = 0; n < static_cast<int>(X.simplices.size()); ++n) {
        for (const auto& xid : X.simplices[n]) {
            std::vector<std::string> opts;
            for (const auto& yid : Y.simplices[n])
                if (cy.at(yid) == cx.at(xid)) opts.push_back(yid);
            if (opts.empty()) return false;
            cand.emplace_back(xid, std::move(opts));
        }
    }
    IsoCtx ctx{&X, &Y, {}, {}};
    return iso_backtrack(ctx, cand, 0);
}

} // namespace prosimpl
