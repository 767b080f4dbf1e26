#include "prosimpl/assemble.hpp"

#include <algorithm>

namespace prosimpl {

const SimplexRef& Assembled::nf(int level, const std::string& key) const {
    if (level < 0 || level >= static_cast<int>(nf_by_level.size()))
        throw ValidationError("normal form requested outside built range");
    auto it = nf_by_level[level].find(key);
    if (it == nf_by_level[level].end())
        throw ValidationError("no normal form recorded for element: " + key);
    return it->second;
}

Assembled assemble(const LevelSpec& spec, const std::string& prefix, int result_cap,
                   const Budgets& budgets) {
    Assembled out;
    out.sset.cap = result_cap;
    out.nf_by_level.resize(spec.top + 1);
    std::size_t counter = 0;
    std::size_t nondeg_total = 0;

    for (int n = 0; n <= spec.top; ++n) {
        std::vector<std::string> elems = spec.elements(n);
        if (elems.size() > budgets.map_cap)
            throw BudgetError("level " + std::to_string(n) + " has " +
                              std::to_string(elems.size()) + " elements, cap " +
                              std::to_string(budgets.map_cap));
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

        // normal forms: strip the lowest degeneracy first
        std::vector<std::string> nondeg;
        for (const auto& e : elems) {
            bool deg = false;
            for (int j = 0; j < n && !deg; ++j) {
                std::string dje = spec.face(n, e, j);
                if (spec.degen(n - 1, dje, j) == e) {
                    out.nf_by_level[n][e] = apply_degeneracy(out.nf(n - 1, dje), j);
                    deg = true;
                }
            }
            if (!deg) nondeg.push_back(e);
        }
        nondeg_total += nondeg.size();
        if (nondeg_total > budgets.max_simplices)
            throw BudgetError("non-degenerate simplex count exceeds cap");

        for (const auto& e : nondeg) {
            std::string id = prefix + "." + std::to_string(counter++);
            out.nf_by_level[n][e] = SimplexRef{{}, id, n};
            out.id_to_key[id] = e;
            std::vector<SimplexRef> fs;
            if (n >= 1)
                for (int i = 0; i <= n; ++i) fs.push_back(out.nf(n - 1, spec.face(n, e, i)));
            out.sset.add_simplex(n, id, std::move(fs));
        }
    }
    out.sset.reindex();
    return out;
}

} // namespace prosimpl
