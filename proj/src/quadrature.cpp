#include "lineshape/quadrature.hpp"

namespace lineshape {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw ValidationError("rel_tol", "must be > 0");
    if (!(abs_tol >= 0.0)) throw ValidationError("abs_tol", "must be >= 0");
    if (max_subdivisions < 16) throw ValidationError("max_subdivisions", "must be >= 16");
}

} // namespace lineshape
