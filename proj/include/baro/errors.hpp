#pragma once

#include <stdexcept>
#include <string>

namespace baro {

// Violated precondition on user-supplied input (grid sizes, law constants, config).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Non-finite value produced during a time step.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, long cell, std::string subterm, double time)
        : std::runtime_error(what), cell_(cell), subterm_(std::move(subterm)), time_(time) {}

    long cell() const { return cell_; }
    const std::string& subterm() const { return subterm_; }
    double time() const { return time_; }

private:
    long cell_;
    std::string subterm_;
    double time_;
};

}  // namespace baro
