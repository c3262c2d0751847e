#pragma once

#include <stdexcept>
#include <string>

namespace aapsm {

/// Malformed layout text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Input violates a data invariant (overlapping features, coincident nodes, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation precondition, e.g. asked for a phase
/// assignment on a graph that still has an odd cycle.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An internal consistency check failed (Euler formula, T-join parity, ...).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// No perfect matching exists on the requested graph.
class InfeasibleMatching : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace aapsm
