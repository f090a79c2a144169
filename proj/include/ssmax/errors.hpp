#pragma once

#include <stdexcept>
#include <string>

namespace ssmax {

/// An argument lies outside the domain an operation is defined on
/// (unknown process id, metric value not in M, empty sequence, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested computation needs something the input cannot provide,
/// e.g. exhaustive enumeration of an infinite metric domain.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a precondition of a protocol operation, e.g. firing a
/// rule whose guard does not hold.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Scenario input failed validation. `path` names the offending member.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ssmax
