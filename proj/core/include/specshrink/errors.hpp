#pragma once

#include <stdexcept>
#include <string>

namespace specshrink {

// Invalid arguments supplied by the caller.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A named mathematical precondition did not hold.
class PreconditionError : public std::domain_error {
public:
    PreconditionError(std::string name, const std::string& detail)
        : std::domain_error(name + ": " + detail), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// A function evaluated to a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, long long index)
        : std::runtime_error(what), index_(index) {}
    long long index() const noexcept { return index_; }

private:
    long long index_;
};

}  // namespace specshrink
