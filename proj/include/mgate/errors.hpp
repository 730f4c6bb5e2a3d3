// errors.hpp
// Error taxonomy. Each class maps onto one CLI exit code, see tools/.

#pragma once

#include <stdexcept>
#include <string>

namespace mgate {

class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed arguments: bad dimensions, out-of-range qubits, undefined labels.
class InputError : public SimError {
public:
    using SimError::SimError;
};

// Normalizing or branching on a vector whose norm has vanished.
class DegenerateBranchError : public SimError {
public:
    using SimError::SimError;
};

// Hard ceilings exceeded: qubit count, matrix embedding size, branch count.
class ResourceError : public SimError {
public:
    using SimError::SimError;
};

// A rewrite pass cannot express the requested transformation.
class RewriteError : public SimError {
public:
    using SimError::SimError;
};

// Subset-state comparison requested across an entangling cut.
class ComparisonError : public SimError {
public:
    using SimError::SimError;
};

// Circuit file syntax or schema violation.
class ParseError : public SimError {
public:
    using SimError::SimError;
};

}  // namespace mgate
