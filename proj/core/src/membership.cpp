#include "evonf/membership.hpp"

#include <cmath>
#include <string>

#include "evonf/errors.hpp"

namespace evonf {

namespace {
void check_bell(const BellMF& mf) {
    if (!(mf.p > 0.0))
        throw InvalidParameter("bell width p must be > 0, got " + std::to_string(mf.p));
    if (!(mf.q > 0.0))
        throw InvalidParameter("bell exponent q must be > 0, got " + std::to_string(mf.q));
}

void check_gaussian(const GaussianMF& mf) {
    if (!(mf.s > 0.0))
        throw InvalidParameter("gaussian spread s must be > 0, got " + std::to_string(mf.s));
}
} // namespace

double eval_bell(const BellMF& mf, double x) {
    check_bell(mf);
    const double t = std::abs((x - mf.r) / mf.p);
    return 1.0 / (1.0 + std::pow(t, 2.0 * mf.q));
}

double eval_gaussian(const GaussianMF& mf, double x) {
    check_gaussian(mf);
    const double d = x - mf.c;
    return std::exp(-(d * d) / (2.0 * mf.s * mf.s));
}

double eval_mf(const MembershipFunction& mf, double x) {
    if (const auto* b = std::get_if<BellMF>(&mf))
        return eval_bell(*b, x);
    return eval_gaussian(std::get<GaussianMF>(mf), x);
}

BellGradient bell_gradient(const BellMF& mf, double x) {
    check_bell(mf);
    const double d = x - mf.r;
    if (d == 0.0)
        return {0.0, 0.0, 0.0}; // value pinned at 1; kink convention
    const double t = std::abs(d / mf.p);
    const double u = std::pow(t, 2.0 * mf.q);
    const double v = 1.0 / (1.0 + u);
    const double v2u = v * v * u;
    const double sign = d > 0.0 ? 1.0 : -1.0;
    return {
        v2u * 2.0 * mf.q / mf.p,                         // d/dp
        -2.0 * v2u * std::log(t),                        // d/dq
        v * v * 2.0 * mf.q * (u / t) * sign / mf.p,      // d/dr
    };
}

GaussianGradient gaussian_gradient(const GaussianMF& mf, double x) {
    check_gaussian(mf);
    const double d = x - mf.c;
    const double v = std::exp(-(d * d) / (2.0 * mf.s * mf.s));
    const double s2 = mf.s * mf.s;
    return {
        v * d / s2,             // d/dc
        v * d * d / (s2 * mf.s) // d/ds
    };
}

std::size_t mf_param_count(MFKind kind) { return kind == MFKind::bell ? 3 : 2; }

std::size_t mf_param_count(const MembershipFunction& mf) { return mf_param_count(mf_kind(mf)); }

MFKind mf_kind(const MembershipFunction& mf) {
    return std::holds_alternative<BellMF>(mf) ? MFKind::bell : MFKind::gaussian;
}

double mf_param(const MembershipFunction& mf, std::size_t idx) {
    if (const auto* b = std::get_if<BellMF>(&mf)) {
        switch (idx) {
        case 0: return b->p;
        case 1: return b->q;
        case 2: return b->r;
        }
    } else {
        const auto& g = std::get<GaussianMF>(mf);
        switch (idx) {
        case 0: return g.c;
        case 1: return g.s;
        }
    }
    throw OutOfRange("mf parameter index " + std::to_string(idx));
}

void set_mf_param(MembershipFunction& mf, std::size_t idx, double value) {
    if (auto* b = std::get_if<BellMF>(&mf)) {
        switch (idx) {
        case 0: b->p = value; return;
        case 1: b->q = value; return;
        case 2: b->r = value; return;
        }
    } else {
        auto& g = std::get<GaussianMF>(mf);
        switch (idx) {
        case 0: g.c = value; return;
        case 1: g.s = value; return;
        }
    }
    throw OutOfRange("mf parameter index " + std::to_string(idx));
}

void mf_gradient(const MembershipFunction& mf, double x, std::span<double> out) {
    if (const auto* b = std::get_if<BellMF>(&mf)) {
        const auto g = bell_gradient(*b, x);
        out[0] = g.dp;
        out[1] = g.dq;
        out[2] = g.dr;
    } else {
        const auto g = gaussian_gradient(std::get<GaussianMF>(mf), x);
        out[0] = g.dc;
        out[1] = g.ds;
    }
}

bool mf_param_is_width(MFKind kind, std::size_t idx) {
    if (kind == MFKind::bell)
        return idx == 0 || idx == 1; // p and q must stay positive
    return idx == 1;                 // gaussian s
}

void validate_mf(const MembershipFunction& mf) {
    if (const auto* b = std::get_if<BellMF>(&mf))
        check_bell(*b);
    else
        check_gaussian(std::get<GaussianMF>(mf));
}

} // namespace evonf
