#pragma once

#include <stdexcept>
#include <string>

namespace hheat {

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Non-finite or otherwise out-of-domain numeric input.
struct NumericDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Operation called on an object that does not hold the required state yet.
struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IterationDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitAborted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable or malformed configuration; the message names the file and line.
struct ConfigError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

}  // namespace hheat
