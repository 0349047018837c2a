#pragma once

#include <cstddef>
#include <span>
#include <variant>

namespace evonf {

/// Generalized bell membership curve, 1 / (1 + |(x - r) / p|^(2q)).
/// p scales the width (half-height at x = r +/- p), q controls the slope of
/// the shoulders, r is the center. Value is 1 exactly at x = r.
struct BellMF {
    double p = 1.0; ///< width scale, > 0, in input units
    double q = 1.0; ///< slope exponent, > 0, dimensionless
    double r = 0.0; ///< center, in input units
};

/// Gaussian membership curve, exp(-(x - c)^2 / (2 s^2)).
struct GaussianMF {
    double c = 0.0; ///< center, in input units
    double s = 1.0; ///< spread, > 0, in input units
};

using MembershipFunction = std::variant<BellMF, GaussianMF>;

enum class MFKind { bell, gaussian };

/// Membership degree in (0, 1]. Throws InvalidParameter if p <= 0 or q <= 0.
double eval_bell(const BellMF& mf, double x);

/// Membership degree in (0, 1]. Throws InvalidParameter if s <= 0.
double eval_gaussian(const GaussianMF& mf, double x);

double eval_mf(const MembershipFunction& mf, double x);

/// Partial derivatives of eval_bell with respect to (p, q, r), in that order.
/// At the non-smooth center point x == r all three partials are 0 by
/// convention (the membership value is pinned at 1 there).
struct BellGradient {
    double dp, dq, dr;
};
BellGradient bell_gradient(const BellMF& mf, double x);

/// Partial derivatives of eval_gaussian with respect to (c, s).
struct GaussianGradient {
    double dc, ds;
};
GaussianGradient gaussian_gradient(const GaussianMF& mf, double x);

/// Number of shape parameters: 3 for bell, 2 for Gaussian.
std::size_t mf_param_count(MFKind kind);
std::size_t mf_param_count(const MembershipFunction& mf);
MFKind mf_kind(const MembershipFunction& mf);

/// Flat parameter access in declaration order (bell: p,q,r; Gaussian: c,s).
double mf_param(const MembershipFunction& mf, std::size_t idx);
void set_mf_param(MembershipFunction& mf, std::size_t idx, double value);

/// Writes the partials into `out` (size mf_param_count) in the same order as
/// mf_param. Dispatches to bell_gradient / gaussian_gradient.
void mf_gradient(const MembershipFunction& mf, double x, std::span<double> out);

/// True for width-like parameters that must stay positive (bell p and q,
/// Gaussian s); used by gradient descent to clamp after a step.
bool mf_param_is_width(MFKind kind, std::size_t idx);

/// Validates shape-parameter invariants, throws InvalidParameter on failure.
void validate_mf(const MembershipFunction& mf);

} // namespace evonf
