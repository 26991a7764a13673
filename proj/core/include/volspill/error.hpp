#pragma once

#include <stdexcept>
#include <string>

namespace volspill {

/// Bad or inconsistent input: malformed files, violated preconditions,
/// inadmissible parameters. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An estimation or recursion that could not produce a finite answer.
/// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace volspill
