#include "evonf/tnorm.hpp"

#include <cmath>
#include <string>

#include "evonf/errors.hpp"

namespace evonf {

double tnorm_ss(double a, double b, TNormParam p) {
    if (!(p.p > 0.0))
        throw InvalidParameter("t-norm exponent p must be > 0, got " + std::to_string(p.p));
    if (a == 0.0 || b == 0.0)
        return 0.0;
    if (a == 1.0)
        return b;
    if (b == 1.0)
        return a;
    const double s = std::pow(a, -p.p) + std::pow(b, -p.p) - 1.0;
    // For a, b in (0, 1) both powers exceed 1, so s > 1 and the max{0, .}
    // clamp cannot fire; it is kept for out-of-domain operands (a, b > 1).
    if (s <= 0.0)
        return 0.0;
    return std::pow(s, -1.0 / p.p);
}

} // namespace evonf
