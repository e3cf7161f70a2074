#pragma once

#include <stdexcept>
#include <string>

namespace coxsigns {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownTypeError : Error {
    explicit UnknownTypeError(const std::string& what) : Error(what) {}
};

struct WordParseError : Error {
    explicit WordParseError(const std::string& what) : Error(what) {}
};

struct IndexError : Error {
    explicit IndexError(const std::string& what) : Error(what) {}
};

struct MixedSystemError : Error {
    explicit MixedSystemError(const std::string& what) : Error(what) {}
};

struct ArityError : Error {
    explicit ArityError(const std::string& what) : Error(what) {}
};

struct DegenerateFormError : Error {
    explicit DegenerateFormError(const std::string& what) : Error(what) {}
};

struct NotAnAutomorphismError : Error {
    explicit NotAnAutomorphismError(const std::string& what) : Error(what) {}
};

struct NotACocycleError : Error {
    explicit NotACocycleError(const std::string& what) : Error(what) {}
};

struct NotAGroupError : Error {
    explicit NotAGroupError(const std::string& what) : Error(what) {}
};

struct UnsupportedShapeError : Error {
    explicit UnsupportedShapeError(const std::string& what) : Error(what) {}
};

struct BasisError : Error {
    explicit BasisError(const std::string& what) : Error(what) {}
};

struct NonWeylError : Error {
    explicit NonWeylError(const std::string& what) : Error(what) {}
};

} // namespace coxsigns
