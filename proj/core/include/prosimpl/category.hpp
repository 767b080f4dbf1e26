#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prosimpl/sset.hpp"

namespace prosimpl {

// A finite category with an explicit composition table.  Identities are
// listed among the morphisms.
struct FinCategory {
    std::vector<std::string> objects;
    struct Mor {
        std::string id, src, dst;
    };
    std::vector<Mor> morphisms;
    // (g, f) -> g∘f, for f: x -> y, g: y -> z
    std::map<std::pair<std::string, std::string>, std::string> table;
    std::map<std::string, std::string> identity; // object -> identity morphism id

    const Mor& mor(const std::string& id) const;
    bool has_object(const std::string& o) const;
    bool is_identity(const std::string& m) const;
    std::string compose_mor(const std::string& g, const std::string& f) const;
};

Report validate_category(const FinCategory& C);

struct Functor {
    FinCategory source, target;
    std::map<std::string, std::string> on_objects;
    std::map<std::string, std::string> on_morphisms;
};

Report validate_functor(const Functor& F);
Functor identity_functor(const FinCategory& C);
Functor compose_functors(const Functor& second, const Functor& first);

// Posets are categories with at most one morphism per hom-set and no
// inverse pairs.  poset_category builds one from a strict order relation;
// morphism ids are "src<=dst" and identities "id:obj".
FinCategory poset_category(const std::vector<std::string>& objects,
                           const std::vector<std::pair<std::string, std::string>>& less_than);
Report validate_poset(const FinCategory& C);
bool poset_leq(const FinCategory& P, const std::string& a, const std::string& b);

bool is_loop_free(const FinCategory& C);
bool is_groupoid(const FinCategory& C);
// Every finite subdiagram admits a cone: checked via pairwise spans and
// equalizing morphisms for parallel pairs.
bool is_left_filtered(const FinCategory& C);

// Nerve.  Non-degenerate n-simplices are strings of n composable
// non-identity morphisms, id = morphism ids joined by "|"; vertices are the
// objects.  trunc must be supplied when C has loops.
FinSSet nerve(const FinCategory& C, std::optional<int> trunc = std::nullopt);

// Normal form of an arbitrary composable string (identities allowed) as a
// simplex of nerve(C); the empty string at an object names the vertex.
SimplexRef nerve_string_ref(const FinCategory& C, const std::string& at_object,
                            const std::vector<std::string>& mors);

// The simplicial map B(F): nerve(C) -> nerve(D) induced by a functor.
SMap nerve_map(const Functor& F, std::optional<int> trunc = std::nullopt);

// Deterministic Graphviz output (objects sorted; non-identity arrows).
std::string to_dot(const FinCategory& C, const std::string& name);

// Small fixture categories.
FinCategory terminal_category();
FinCategory arrow_category();                        // poset [1]
FinCategory cospan_category();                       // a -> c <- b
FinCategory cyclic_group_category(int order);        // one object, Z/n
FinCategory discrete_category(int n);                // n objects, identities only

} // namespace prosimpl
