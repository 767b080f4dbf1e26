#pragma once

// Shared fixture lists and independent oracles for the test suites.

#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "prosimpl/complexes.hpp"
#include "prosimpl/homology.hpp"

namespace testutil {

using namespace prosimpl;

inline std::vector<std::pair<std::string, SimplicialComplex>> fixture_complexes() {
    return {{"delta0", full_simplex_complex(0)}, {"delta1", full_simplex_complex(1)},
            {"delta2", full_simplex_complex(2)}, {"delta3", full_simplex_complex(3)},
            {"bd_delta2", boundary_complex(2)},  {"bd_delta3", boundary_complex(3)},
            {"horn_2_1", horn_complex(2, 1)},    {"hexagon", hexagon_complex()},
            {"torus", torus_complex()},          {"rp2", rp2_complex()}};
}

inline std::vector<std::pair<std::string, FinSSet>> fixture_ssets() {
    std::vector<std::pair<std::string, FinSSet>> out;
    for (auto& [name, K] : fixture_complexes()) out.emplace_back(name, complex_to_sset(K));
    out.emplace_back("circle", circle());
    FinSSet wedge = circle();
    wedge.simplices[1].push_back("e2");
    wedge.faces["e2"] = wedge.faces.at("e");
    wedge.reindex();
    out.emplace_back("wedge", wedge);
    return out;
}

// Euler characteristic straight from the alternating simplex count.
inline long long chi(const FinSSet& X) {
    long long s = 0;
    int sign = 1;
    for (auto c : X.counts()) {
        s += sign * static_cast<long long>(c);
        sign = -sign;
    }
    return s;
}

// Bareiss fraction-free determinant, used by the minor-gcd oracle below.
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Invariant factors as successive quotients of the gcds of k×k minors —
// an oracle independent of the Smith normal form routine.
inline std::vector<Int> minor_gcd_factors(const IMat& M) {
    const int r = M.rows, c = M.cols;
    std::vector<Int> d;
    for (int k = 1; k <= std::min(r, c); ++k) {
        Int g = 0;
        std::vector<int> ri(k), ci(k);
        std::iota(ri.begin(), ri.end(), 0);
        auto next_subset = [](std::vector<int>& s, int n) {
            int k2 = static_cast<int>(s.size());
            int i = k2 - 1;
            while (i >= 0 && s[i] == n - k2 + i) --i;
            if (i < 0) return false;
            ++s[i];
            for (int j = i + 1; j < k2; ++j) s[j] = s[j - 1] + 1;
            return true;
        };
        do {
            std::iota(ci.begin(), ci.end(), 0);
            do {
                std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub[i][j] = M.at(ri[i], ci[j]);
                Int det = bareiss_det(sub);
                g = boost::multiprecision::gcd(g, det < 0 ? Int(-det) : det);
            } while (next_subset(ci, c));
        } while (next_subset(ri, r));
        if (g == 0) break;
        d.push_back(g);
    }
    std::vector<Int> f;
    for (std::size_t k = 0; k < d.size(); ++k) f.push_back(k == 0 ? d[0] : d[k] / d[k - 1]);
    return f;
}

inline IMat random_mat(std::mt19937& rng) {
    std::uniform_int_distribution<int> size(1, 8), entry(-9, 9);
    IMat m(size(rng), size(rng));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = entry(rng);
    return m;
}

} // namespace testutil
