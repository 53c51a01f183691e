#pragma once

#include <stdexcept>
#include <string>

namespace mkdv {

/// Rejected input: violates a documented precondition. Maps to CLI exit code 1.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation ran but failed an accuracy or convergence check. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mkdv
