#pragma once

#include <stdexcept>
#include <string>

namespace qosa {

// Bad caller input: out-of-range levels, indices, sample sizes, distribution
// parameters. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The index is undefined for the sample at hand, e.g. CTE_alpha(Y) == E(Y)
// or an empty exceedance set. The CLI maps this to exit code 3.
class DegenerateOutput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite model output or failed quadrature. Exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qosa
