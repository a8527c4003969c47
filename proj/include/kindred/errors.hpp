#ifndef KINDRED_ERRORS_HPP
#define KINDRED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kindred {

// Bad input data: malformed profiles, invalid alphabets, out-of-range values.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed documents (JSON profiles, wire requests, FASTA).
struct ParseError : ValidationError {
    explicit ParseError(const std::string& what) : ValidationError(what) {}
};

// Operation invoked in the wrong handshake phase or role.
struct StateError : std::runtime_error {
    explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

// Misconfigured hash registry or scenario setup.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kindred

#endif
