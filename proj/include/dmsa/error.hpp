#pragma once

#include <stdexcept>
#include <string>

namespace dmsa {

// Base class for everything the library throws on bad data or failed
// external steps. API misuse (mismatched parameters, empty inputs where a
// precondition forbids them) is reported with std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input, or a result that breaks an alignment invariant.
class DataError : public Error {
public:
    using Error::Error;
};

// An external aligner exited non-zero or produced unusable output.
class ExternalAlignerError : public Error {
public:
    using Error::Error;
};

}  // namespace dmsa
