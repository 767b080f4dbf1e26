#pragma once

#include <vector>

#include "prosimpl/category.hpp"
#include "prosimpl/sset.hpp"

namespace prosimpl {

// Gluing data: a list of finite simplicial sets and maps between them.  The
// colimit is computed dimensionwise on all simplices (degenerate included)
// by a union-find over the relations a ~ F(a), then re-normalized.
struct GlueArrow {
    int src = 0, dst = 0;
    SMap map; // source/target must match the listed objects
};

struct GlueResult {
    FinSSet object;
    std::vector<SMap> cocone; // one per input object
    // representative of each non-degenerate output simplex: (object index,
    // non-degenerate simplex id in that object)
    std::unordered_map<std::string, std::pair<int, std::string>> rep;
};

GlueResult glue(const std::vector<FinSSet>& objects, const std::vector<GlueArrow>& arrows,
                const std::string& prefix = "c", const Budgets& budgets = default_budgets());

// Pushout of B <-f- A -g-> C; cocone legs for B and C.
struct PushoutResult {
    FinSSet object;
    SMap from_b, from_c;
};
PushoutResult pushout(const SMap& f, const SMap& g, const Budgets& budgets = default_budgets());

// Colimit of a functorial diagram over a finite category.  Functoriality of
// the assignment is validated first.
struct DiagramOverCategory {
    FinCategory index;
    std::map<std::string, FinSSet> objects;       // object id -> value
    std::map<std::string, SMap> arrows;           // morphism id -> map (identities optional)
};
Report validate_diagram(const DiagramOverCategory& D);

struct ColimitResult {
    FinSSet object;
    std::map<std::string, SMap> cocone; // per index object
};
ColimitResult colimit(const DiagramOverCategory& D, const Budgets& budgets = default_budgets());

} // namespace prosimpl
