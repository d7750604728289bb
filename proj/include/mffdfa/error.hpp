#pragma once

#include <stdexcept>
#include <string>

namespace mffdfa {

// Library failures fall into two families that callers treat differently:
// malformed or out-of-range input, and numerically unusable data.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mffdfa
