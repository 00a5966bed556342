// Error types shared by the fairsim core modules.
#pragma once

#include <stdexcept>
#include <string>

namespace fair {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// scenario model
struct CoverageOutrun : SimError {
    using SimError::SimError;
};
struct ZeroSpeed : SimError {
    using SimError::SimError;
};

// trajectory I/O
struct ParseError : SimError {
    ParseError(std::string msg, std::size_t row, std::string column)
        : SimError(std::move(msg)), row(row), column(std::move(column)) {}
    std::size_t row = 0;
    std::string column;
};
struct SchemaError : SimError {
    using SimError::SimError;
};
struct EmptyScenario : SimError {
    using SimError::SimError;
};
struct OutOfRange : SimError {
    using SimError::SimError;
};
struct InvalidPattern : SimError {
    using SimError::SimError;
};

// radio / energy
struct NonPositiveDistance : SimError {
    using SimError::SimError;
};
struct LinkDown : SimError {
    using SimError::SimError;
};

// service adaptation
struct ZeroGrant : SimError {
    using SimError::SimError;
};

// reporting
struct MismatchedScenario : SimError {
    using SimError::SimError;
};
struct IoError : SimError {
    using SimError::SimError;
};

} // namespace fair
