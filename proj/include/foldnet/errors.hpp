#pragma once

#include <stdexcept>
#include <string>

namespace foldnet {

// Raised when a graph handed to an analysis routine fails validation.
class InvalidGraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed serialized input. field_path() names the offending JSON location.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field_path, const std::string& what)
        : std::runtime_error(field_path + ": " + what), field_path_(std::move(field_path)) {}

    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

class VersionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input whose values break a domain invariant.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace foldnet
