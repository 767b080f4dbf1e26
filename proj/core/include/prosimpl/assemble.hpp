#pragma once

#include <functional>
#include <string>
#include <vector>

#include "prosimpl/sset.hpp"

namespace prosimpl {

// Levelwise presentation of a simplicial set: an exhaustive enumeration of
// the simplices in each dimension (degenerate ones included), with face and
// degeneracy operators acting on element keys.  assemble() extracts the
// non-degenerate part in Eilenberg–Zilber normal form and produces a FinSSet
// with deterministically generated ids.
struct LevelSpec {
    int top = 0; // build dimensions 0..top
    std::function<std::vector<std::string>(int)> elements;
    std::function<std::string(int, const std::string&, int)> face;  // d_i: n -> n-1
    std::function<std::string(int, const std::string&, int)> degen; // s_j: n -> n+1
};

struct Assembled {
    FinSSet sset;
    std::vector<std::unordered_map<std::string, SimplexRef>> nf_by_level;
    std::unordered_map<std::string, std::string> id_to_key;

    const SimplexRef& nf(int level, const std::string& key) const;
};

// result_cap == -1 marks the output complete; otherwise the output carries
// that truncation cap.  Ids are "<prefix>.<counter>" with counters assigned
// in (dimension, key-lexicographic) order.
Assembled assemble(const LevelSpec& spec, const std::string& prefix, int result_cap,
                   const Budgets& budgets = default_budgets());

} // namespace prosimpl
