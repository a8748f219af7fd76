#pragma once

#include <stdexcept>

namespace purity {

/// Thrown when an iterative numerical procedure (quadrature, eigensolver,
/// high-precision solve) fails to reach its requested tolerance. The message
/// carries the achieved accuracy so callers can report diagnostics.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace purity
