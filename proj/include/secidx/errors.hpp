#pragma once

#include <stdexcept>
#include <string>

namespace secidx {

// File could not be parsed against the on-disk schema.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed fine but violates a structural/numeric invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested computation has no feasible solution.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace secidx
