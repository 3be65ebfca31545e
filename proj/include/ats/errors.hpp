#pragma once

#include <stdexcept>
#include <string>

namespace ats {

// Params invariant violated; message names the inequality.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input outside the domain of a decomposition or norm-bounded operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A relation encoder was handed a witness that does not satisfy the statement.
struct WitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExtractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PolicyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LockError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ats
