#pragma once

#include <stdexcept>
#include <string>

namespace fqm {

// Bad input or an unmet divisibility/integrality precondition.
class ValidationError : public std::domain_error {
public:
    explicit ValidationError(const std::string& what) : std::domain_error(what) {}
};

// Integer arithmetic that would leave the 64-bit range.
class OverflowError : public ValidationError {
public:
    explicit OverflowError(const std::string& what) : ValidationError(what) {}
};

// The requested quantity does not exist (t = 0, sin(wt) = 0, tan pole, ...).
class SingularityError : public std::domain_error {
public:
    explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

// An identity that must hold by construction was observed to fail.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fqm
