#pragma once

#include <stdexcept>
#include <string>

namespace topophase {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An evaluation point (or a finite-difference stencil around it) fell too
// close to a declared field singularity, or a field evaluation produced a
// non-finite value.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Scenario text could not be parsed against the schema.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace topophase
