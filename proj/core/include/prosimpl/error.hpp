#pragma once

#include <stdexcept>
#include <string>

namespace prosimpl {

// Input violates a structural invariant (bad index, missing simplex,
// non-functorial diagram, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A face/degeneracy expression with an out-of-range index.
struct MalformedExpression : ValidationError {
    explicit MalformedExpression(const std::string& what) : ValidationError(what) {}
};

// A configured resource cap was exceeded (simplex counts, map counts,
// search nodes).  Exhaustion of a bounded search is a *result*, not a
// BudgetError; this is only thrown when an object would grow past a cap.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace prosimpl
