#pragma once

#include "json.hpp"
#include "prosimpl/diagrams.hpp"

namespace prosimpl::io {

// insertion-ordered JSON keeps emitted keys in (dimension, lexicographic)
// order for byte-stable output
using json = nlohmann::ordered_json;

// --- serialization -----------------------------------------------------------

json to_json(const SimplexRef& r);
json to_json(const FinSSet& X);
json to_json(const SMap& f); // source/target inline
json to_json(const SimplicialComplex& K);
json to_json(const FinCategory& C);
json to_json(const Functor& F);
json to_json(const Diagram& X);
json to_json(const ProMap& p);
json to_json(const FibrantTestObject& Z);

// --- parsing -----------------------------------------------------------------
// A reference field is either an inline object or a string path, resolved
// relative to base_dir.  All parsers throw ValidationError on malformed
// input.

SimplexRef ref_from_json(const json& j);
FinSSet sset_from_json(const json& j, const std::string& base_dir = "");
SMap smap_from_json(const json& j, const std::string& base_dir = "");
SimplicialComplex complex_from_json(const json& j, const std::string& base_dir = "");
FinCategory category_from_json(const json& j, const std::string& base_dir = "");
Functor functor_from_json(const json& j, const std::string& base_dir = "");
Diagram diagram_from_json(const json& j, const std::string& base_dir = "");
ProMap promap_from_json(const json& j, const std::string& base_dir = "");
FibrantTestObject fibrant_from_json(const json& j, const std::string& base_dir = "");

// resolve a path-or-inline reference to the JSON value it denotes; returns
// the directory the result should resolve its own references against
json resolve_ref(const json& j, const std::string& base_dir, std::string& next_dir);

// --- files -------------------------------------------------------------------

json load_file(const std::string& path);
void write_file(const std::string& path, const json& j);
std::string dump(const json& j); // 2-space indent, trailing newline

// directory part of a path ("" when none)
std::string dir_of(const std::string& path);

} // namespace prosimpl::io
