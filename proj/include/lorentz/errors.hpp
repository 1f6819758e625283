#pragma once

#include <stdexcept>

namespace lorentz {

/// Numeric failure: quadrature or eigensolver did not converge to tolerance.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lorentz
