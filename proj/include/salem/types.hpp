#pragma once

#include <cstdint>
#include <stdexcept>

namespace salem {

using Digit = std::uint32_t;

// A real value together with a rigorous truncation remainder: the exact
// value lies in [value - bound, value + bound] up to floating-point rounding.
struct EvalResult {
    double value = 0.0;
    double bound = 0.0;
};

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateTargetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedPermutationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnclassifiedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonDistributionalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace salem
