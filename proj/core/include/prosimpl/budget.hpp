#pragma once

#include <cstddef>

namespace prosimpl {

// Global resource limits.  All searches and constructions echo the budgets
// they ran under, so verdicts are reproducible.
struct Budgets {
    int nmax = 3;                      // max dimension of lifting problems
    int kmax = 2;                      // max subdivision depth in searches
    std::size_t map_cap = 100000;      // per-dimension cap on enumerated maps
    std::size_t max_simplices = 1000000; // cap on non-degenerate simplices per object
    std::size_t search_nodes = 2000000;  // backtracking node budget per search
    std::size_t problems_per_dim = 64;   // lifting problems sampled per dimension in weq_test
};

// Default budgets; max_simplices honours PROSIMPL_MAX_SIMPLICES if set.
Budgets default_budgets();

} // namespace prosimpl
