#pragma once

namespace evonf {

/// Exponent of the Schweizer-Sklar intersection operator. Must stay > 0;
/// the p -> 0 (product) and p -> infinity (min) behaviours are limits of the
/// formula, never stored values.
struct TNormParam {
    double p = 1.0;
};

/// Range the exponent is confined to during optimization. The lower edge
/// keeps pow(m, -p) well away from overflow; the upper edge is already
/// visually indistinguishable from min.
inline constexpr double kTNormParamMin = 0.01;
inline constexpr double kTNormParamMax = 100.0;

/// Schweizer-Sklar T-norm:  T(a, b, p) = [max{0, a^-p + b^-p - 1}]^(-1/p).
///
/// Inputs a, b in [0, 1]. An operand of exactly 0 yields 0 (the limit value;
/// 0^-p is not evaluated), and an operand of exactly 1 yields the other
/// operand (1 is the identity; returning it directly keeps the boundary law
/// exact in floating point). Throws InvalidParameter if p <= 0.
double tnorm_ss(double a, double b, TNormParam p);

} // namespace evonf
