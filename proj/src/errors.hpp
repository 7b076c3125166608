#pragma once

#include <stdexcept>
#include <string>

namespace sgvq {

// Error hierarchy mapped onto C-API status codes and CLI exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct NotFoundError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct NetworkError : Error {
    using Error::Error;
};

struct AuthError : NetworkError {
    using NetworkError::NetworkError;
};

} // namespace sgvq
