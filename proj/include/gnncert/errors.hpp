#pragma once

#include <stdexcept>
#include <string>

namespace gnncert {

// Invalid parameters or mathematically inapplicable operation (CLI exit 3).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation exceeds a configured resource budget (CLI exit 4).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gnncert
