#pragma once

#include <stdexcept>
#include <string>

namespace exfb {

// Base of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDomain : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct UnsupportedDimension : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

} // namespace exfb
