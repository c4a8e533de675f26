#pragma once

#include <stdexcept>
#include <string>

namespace polyvem {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateElement : Error {
    using Error::Error;
};

struct TriangulationFailure : Error {
    using Error::Error;
};

struct EmptySeedSet : Error {
    using Error::Error;
};

struct MeshingFailure : Error {
    int seed_index = -1;
    MeshingFailure(const std::string& what, int seed)
        : Error(what + " (seed " + std::to_string(seed) + ")"), seed_index(seed) {}
    explicit MeshingFailure(const std::string& what) : Error(what) {}
};

struct Unsupported : Error {
    using Error::Error;
};

struct ConstitutiveSingularity : Error {
    using Error::Error;
};

struct UnmatchedConstraint : Error {
    using Error::Error;
};

struct ConstraintConflict : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct SolveFailure : Error {
    int null_space_estimate = 0;
    SolveFailure(const std::string& what, int null_dim)
        : Error(what + " (estimated null-space dimension " + std::to_string(null_dim) + ")"),
          null_space_estimate(null_dim) {}
};

struct NormUndefined : Error {
    using Error::Error;
};

// Text-format errors carry the 1-based line number of the offending line.
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& what, int line_no)
        : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct IndexError : ParseError {
    using ParseError::ParseError;
};

} // namespace polyvem
