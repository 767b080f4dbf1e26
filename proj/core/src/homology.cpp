#include "prosimpl/homology.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace prosimpl {

bool IMat::is_zero() const {
    for (const auto& row : a)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

std::string IMat::to_text() const {
    std::ostringstream os;
    os << rows << " " << cols << "\n";
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) os << (j ? " " : "") << a[i][j];
        os << "\n";
    }
    return os.str();
}

IMat identity_mat(int n) {
    IMat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IMat mat_mul(const IMat& A, const IMat& B) {
    if (A.cols != B.rows) throw std::logic_error("matrix dimension mismatch");
    IMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

std::vector<Int> SNF::invariant_factors() const {
    std::vector<Int> out;
    for (int i = 0; i < std::min(D.rows, D.cols); ++i)
        if (D.at(i, i) != 0) out.push_back(D.at(i, i));
    return out;
}

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

} // namespace

SNF smith_normal_form(const IMat& M) {
    SNF s;
    s.D = M;
    s.U = identity_mat(M.rows);
    s.V = identity_mat(M.cols);
    IMat& D = s.D;
    IMat& U = s.U;
    IMat& V = s.V;
    const int rows = M.rows, cols = M.cols, bound = std::min(rows, cols);

    // quotient minimizing the remainder, to keep entries small
    auto near_div = [](const Int& a, const Int& b) {
        Int q = a / b, r = a - q * b;
        if (2 * iabs(r) > iabs(b)) q += (r < 0) == (b < 0) ? 1 : -1;
        return q;
    };
    auto row_sub = [&](int i, int t, const Int& q) { // row i -= q * row t
        if (q == 0) return;
        for (int j = 0; j < cols; ++j) D.at(i, j) -= q * D.at(t, j);
        for (int j = 0; j < U.cols; ++j) U.at(i, j) -= q * U.at(t, j);
    };
    auto col_sub = [&](int j, int t, const Int& q) { // col j -= q * col t
        if (q == 0) return;
        for (int i = 0; i < rows; ++i) D.at(i, j) -= q * D.at(i, t);
        for (int i = 0; i < V.rows; ++i) V.at(i, j) -= q * V.at(i, t);
    };

    for (int t = 0; t < bound; ++t) {
        for (;;) {
            // re-select the globally minimal pivot every pass; sticking with
            // a stale pivot lets the trailing block grow exponentially
            int pi = -1, pj = -1;
            for (int i = t; i < rows && (pi < 0 || iabs(D.at(pi, pj)) != 1); ++i)
                for (int j = t; j < cols; ++j)
                    if (D.at(i, j) != 0 && (pi < 0 || iabs(D.at(i, j)) < iabs(D.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                        if (iabs(D.at(i, j)) == 1) break; // nothing beats a unit pivot
                    }
            if (pi < 0) break; // trailing block is zero
            if (pi != t) {
                std::swap(D.a[t], D.a[pi]);
                std::swap(U.a[t], U.a[pi]);
            }
            if (pj != t) {
                for (int i = 0; i < rows; ++i) std::swap(D.at(i, t), D.at(i, pj));
                for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, t), V.at(i, pj));
            }
            bool dirty = false;
            for (int i = t + 1; i < rows; ++i) {
                if (D.at(i, t) == 0) continue;
                row_sub(i, t, near_div(D.at(i, t), D.at(t, t)));
                if (D.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (D.at(t, j) == 0) continue;
                col_sub(j, t, near_div(D.at(t, j), D.at(t, t)));
                if (D.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // pivot row and column are clear; enforce divisibility
            int bi = -1, bj = -1;
            for (int i = t + 1; i < rows && bi < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0) break;
            col_sub(t, bj, Int(-1)); // fold the offending column into column t
        }
        if (D.at(t, t) < 0) {
            for (int j = 0; j < cols; ++j) D.at(t, j) = -D.at(t, j);
            for (int j = 0; j < U.cols; ++j) U.at(t, j) = -U.at(t, j);
        }
    }

    // reconstruction check
    IMat R = mat_mul(mat_mul(U, M), V);
    for (int i = 0; i < R.rows; ++i)
        for (int j = 0; j < R.cols; ++j)
            if (R.at(i, j) != D.at(i, j)) throw std::logic_error("SNF reconstruction failed");
    return s;
}

ChainComplex chain_complex(const FinSSet& X) {
    ChainComplex cc;
    int top = X.dim();
    cc.basis.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        cc.basis[n] = n < static_cast<int>(X.simplices.size()) ? X.simplices[n]
                                                               : std::vector<std::string>{};
        for (std::size_t j = 0; j < cc.basis[n].size(); ++j)
            cc.index[cc.basis[n][j]] = static_cast<int>(j);
    }
    cc.boundary.resize(top + 1);
    if (top >= 0) cc.boundary[0] = IMat(0, static_cast<int>(cc.basis[0].size()));
    for (int n = 1; n <= top; ++n) {
        IMat d(static_cast<int>(cc.basis[n - 1].size()), static_cast<int>(cc.basis[n].size()));
        for (std::size_t j = 0; j < cc.basis[n].size(); ++j) {
            const auto& fs = X.faces.at(cc.basis[n][j]);
            for (int i = 0; i <= n; ++i) {
                if (fs[i].degenerate()) continue;
                d.at(cc.index.at(fs[i].base), static_cast<int>(j)) += (i % 2 == 0) ? 1 : -1;
            }
        }
        cc.boundary[n] = std::move(d);
    }
    return cc;
}

std::string HomologyGroup::to_string() const {
    if (rank == 0 && torsion.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    return os.str();
}

int valid_homology_degrees(const FinSSet& X) {
    if (X.complete()) return X.dim() + 1;
    return std::max(0, X.cap - 1);
}

namespace {

struct DegreeData {
    int k = 0;   // rank of the cycle lattice
    IMat K;      // ambient x k, saturated basis of ker ∂_n
    SNF Ksnf;    // of K, for coordinate solving
    IMat rel;    // k x (#(n+1)-simplices): boundaries in cycle coordinates
    HomologyGroup H;
};

// coordinates of B (ambient x m, columns inside the cycle lattice) in the
// basis K
IMat solve_in_kernel(const DegreeData& dd, const IMat& B) {
    const IMat C = mat_mul(dd.Ksnf.U, B);
    IMat y(dd.k, B.cols);
    const int r = static_cast<int>(dd.Ksnf.invariant_factors().size());
    for (int i = 0; i < C.rows; ++i)
        for (int j = 0; j < C.cols; ++j) {
            if (i < r) {
                if (C.at(i, j) % dd.Ksnf.D.at(i, i) != 0)
                    throw std::logic_error("column not in the cycle lattice");
                y.at(i, j) = C.at(i, j) / dd.Ksnf.D.at(i, i);
            } else if (C.at(i, j) != 0) {
                throw std::logic_error("column not in the cycle lattice");
            }
        }
    return mat_mul(dd.Ksnf.V, y);
}

DegreeData degree_data(const ChainComplex& cc, int n) {
    DegreeData dd;
    const int cn = n < static_cast<int>(cc.basis.size()) ? static_cast<int>(cc.basis[n].size()) : 0;
    IMat dn = (n == 0 || n >= static_cast<int>(cc.boundary.size())) ? IMat(0, cn) : cc.boundary[n];
    if (n == 0) dn = IMat(0, cn);

    SNF s = smith_normal_form(dn);
    const int r = static_cast<int>(s.invariant_factors().size());
    dd.k = cn - r;
    dd.K = IMat(cn, dd.k);
    for (int i = 0; i < cn; ++i)
        for (int j = 0; j < dd.k; ++j) dd.K.at(i, j) = s.V.at(i, r + j);
    dd.Ksnf = smith_normal_form(dd.K);

    IMat B = n + 1 < static_cast<int>(cc.boundary.size()) ? cc.boundary[n + 1] : IMat(cn, 0);
    dd.rel = solve_in_kernel(dd, B);

    SNF q = smith_normal_form(dd.rel);
    const auto factors = q.invariant_factors();
    dd.H.rank = dd.k - static_cast<int>(factors.size());
    for (const auto& d : factors)
        if (d > 1) dd.H.torsion.push_back(d);
    return dd;
}

} // namespace

std::vector<HomologyGroup> homology(const FinSSet& X) {
    ChainComplex cc = chain_complex(X);
    std::vector<HomologyGroup> out;
    const int degs = valid_homology_degrees(X);
    for (int n = 0; n < degs; ++n) out.push_back(degree_data(cc, n).H);
    return out;
}

InducedHomology induced_map_homology(const SMap& f) {
    InducedHomology out;
    ChainComplex ccX = chain_complex(f.source);
    ChainComplex ccY = chain_complex(f.target);
    // compare through min(dim X, dim Y) + 1 — complete objects have zero
    // homology beyond their dimension, truncations cap the trusted range
    auto lim = [](const FinSSet& Z) {
        return Z.complete() ? std::numeric_limits<int>::max() : valid_homology_degrees(Z);
    };
    const int want = std::min(f.source.dim(), f.target.dim()) + 2;
    const int degs = std::min({lim(f.source), lim(f.target), want});
    for (int n = 0; n < degs; ++n) {
        DegreeData dX = degree_data(ccX, n);
        DegreeData dY = degree_data(ccY, n);
        out.source.push_back(dX.H);
        out.target.push_back(dY.H);

        const int cnX = n < static_cast<int>(ccX.basis.size())
                            ? static_cast<int>(ccX.basis[n].size())
                            : 0;
        const int cnY = n < static_cast<int>(ccY.basis.size())
                            ? static_cast<int>(ccY.basis[n].size())
                            : 0;
        IMat F(cnY, cnX);
        for (int j = 0; j < cnX; ++j) {
            const SimplexRef& r = f.on.at(ccX.basis[n][j]);
            if (!r.degenerate()) F.at(ccY.index.at(r.base), j) = 1;
        }
        IMat Hf = solve_in_kernel(dY, mat_mul(F, dX.K));
        out.matrix.push_back(Hf);

        // isomorphism ⟺ same abstract group and surjective (Hopfian)
        bool iso = (dX.H == dY.H);
        if (iso) {
            IMat aug(dY.k, Hf.cols + dY.rel.cols);
            for (int i = 0; i < dY.k; ++i) {
                for (int j = 0; j < Hf.cols; ++j) aug.at(i, j) = Hf.at(i, j);
                for (int j = 0; j < dY.rel.cols; ++j) aug.at(i, Hf.cols + j) = dY.rel.at(i, j);
            }
            const auto factors = smith_normal_form(aug).invariant_factors();
            iso = static_cast<int>(factors.size()) == dY.k;
            for (const auto& d : factors)
                if (d != 1) iso = false;
        }
        out.iso.push_back(iso);
        if (!iso) out.all_iso = false;
    }
    return out;
}

Pi0 pi0(const FinSSet& X) {
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        std::string root = find(it->second);
        parent[x] = root;
        return root;
    };
    auto unite = [&](const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    };
    if (X.simplices.empty()) return {};
    for (const auto& v : X.simplices[0]) parent.emplace(v, v);
    if (X.simplices.size() > 1)
        for (const auto& e : X.simplices[1]) unite(X.faces.at(e)[0].base, X.faces.at(e)[1].base);

    Pi0 out;
    std::map<std::string, int> root_index;
    for (const auto& v : X.simplices[0]) {
        const std::string r = find(v);
        auto [it, fresh] = root_index.emplace(r, static_cast<int>(root_index.size()));
        out.component[v] = it->second;
        (void)fresh;
    }
    out.count = root_index.size();
    return out;
}

FinSSet groupoid_nerve(const FinCategory& G, int D) {
    Report rep = validate_category(G);
    if (!rep.empty())
        throw ValidationError("invalid category: " + rep.front().where + ": " +
                              rep.front().message);
    if (!is_groupoid(G)) throw ValidationError("not a groupoid: missing inverses");
    FinSSet N = nerve(G, D);
    N.kan = true;
    return N;
}

} // namespace prosimpl
