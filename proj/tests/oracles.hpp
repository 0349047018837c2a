#pragma once

// Reference implementations kept deliberately naive and separate from the
// library code paths they check: a scalar Schweizer-Sklar operator, a
// pairwise left-fold firing evaluator, a brute-force TS inference, central
// finite differences, and random-instance builders. The smooth-instance
// builders keep every membership well inside (0, 1) so gradient checks stay
// away from the operator's kink points.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evonf/dataset.hpp"
#include "evonf/membership.hpp"
#include "evonf/model.hpp"
#include "evonf/rng.hpp"

namespace oracle {

// Schweizer-Sklar T-norm straight from the definition.
inline double tnorm_naive(double a, double b, double p) {
    if (a == 1.0) return b;
    if (b == 1.0) return a;
    if (a == 0.0 || b == 0.0) return 0.0;
    const double s = std::pow(a, -p) + std::pow(b, -p) - 1.0;
    if (s <= 0.0) return 0.0;
    return std::pow(s, -1.0 / p);
}

// Firing strength: per-variable max over the labels the mask names, then a
// pairwise fold across variables. Zero masks are don't-cares.
inline double firing_naive(const evonf::TSKModel& model, const evonf::Rule& rule,
                           std::span<const double> x) {
    double w = 1.0;
    for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
        const std::uint32_t mask = rule.antecedent[i];
        if (mask == 0) continue;
        double m = 0.0;
        for (std::size_t j = 0; j < model.partitions[i].size(); ++j)
            if ((mask >> j) & 1u) m = std::max(m, evonf::eval_mf(model.partitions[i][j], x[i]));
        w = tnorm_naive(w, m, model.tnorm.p);
    }
    return w;
}

inline double total_firing_naive(const evonf::TSKModel& model, std::span<const double> x) {
    double total = 0.0;
    for (std::size_t k = 0; k < model.rulebase.rules.size(); ++k)
        if (model.rulebase.active[k])
            total += firing_naive(model, model.rulebase.rules[k], x);
    return total;
}

// Brute-force TS output, mirroring the production fallback rule: total
// firing below 1e-12 yields the unweighted mean of active consequents.
inline double infer_naive(const evonf::TSKModel& model, std::span<const double> x) {
    double total = 0.0, weighted = 0.0, plain = 0.0;
    std::size_t n_active = 0;
    for (std::size_t k = 0; k < model.rulebase.rules.size(); ++k) {
        if (!model.rulebase.active[k]) continue;
        const evonf::Rule& r = model.rulebase.rules[k];
        double g = r.consequent[0];
        for (std::size_t i = 0; i < x.size(); ++i) g += r.consequent[i + 1] * x[i];
        const double w = firing_naive(model, r, x);
        total += w;
        weighted += w * g;
        plain += g;
        ++n_active;
    }
    if (total < 1e-12) return plain / static_cast<double>(n_active);
    return weighted / total;
}

template <typename F> double central_diff(F f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want, double floor = 1e-6) {
    return std::abs(got - want) / std::max({std::abs(got), std::abs(want), floor});
}

// Upper 1% critical values of the chi-square distribution.
inline double chi2_crit_p01(std::size_t df) {
    constexpr double crit[] = {0.0, 6.6349, 9.2103, 11.3449, 13.2767, 15.0863, 16.8119};
    return crit[df];
}

// One single-label rule per input at (0.5, 1.0) Gaussians. With one active
// rule the weighted average cancels the firing, so the model predicts its
// linear consequent exactly wherever the firing clears the fallback
// threshold (x in [0, 1] gives membership >= 0.88 per variable).
inline evonf::TSKModel single_rule_model(std::size_t n_inputs, std::vector<double> consequent) {
    evonf::TSKModel model;
    model.partitions.assign(n_inputs, {evonf::GaussianMF{0.5, 1.0}});
    evonf::Rule rule;
    rule.antecedent.assign(n_inputs, 1u);
    rule.consequent = std::move(consequent);
    model.rulebase.rules.push_back(rule);
    model.rulebase.active.push_back(1);
    return model;
}

// Gradient-check instance: full single-label grid, wide Gaussians, inputs
// drawn from [0, 1]. Memberships stay above 0.24, so the max{0, .} clamp,
// the per-variable max, and the mean fallback are all far from their
// switching points.
inline evonf::TSKModel random_smooth_model(evonf::Rng& rng, std::size_t n_inputs,
                                           std::size_t mf_per_input) {
    evonf::TSKModel model;
    model.partitions.resize(n_inputs);
    for (auto& part : model.partitions)
        for (std::size_t j = 0; j < mf_per_input; ++j)
            part.push_back(evonf::GaussianMF{rng.uniform(0.0, 1.0), rng.uniform(0.6, 1.2)});
    model.rulebase = evonf::grid_partition_init(n_inputs, mf_per_input);
    for (auto& rule : model.rulebase.rules)
        for (auto& c : rule.consequent) c = rng.uniform(-2.0, 2.0);
    bool any = false;
    for (auto& bit : model.rulebase.active) {
        bit = rng.coin(0.8) ? 1 : 0;
        any |= bit != 0;
    }
    if (!any) model.rulebase.active.front() = 1;
    model.tnorm.p = rng.uniform(0.1, 2.0);
    return model;
}

inline evonf::Dataset random_smooth_dataset(evonf::Rng& rng, std::size_t n_inputs,
                                            std::size_t n_rows) {
    evonf::Dataset data;
    data.n_inputs = n_inputs;
    std::vector<double> row(n_inputs);
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (auto& v : row) v = rng.uniform(0.0, 1.0);
        data.add_row(row, rng.uniform(0.0, 1.0));
    }
    return data;
}

// Inference-oracle instance: mixed MF families, multi-label and don't-care
// masks, random selection bits, T-norm exponent log-uniform over [0.05, 20].
inline evonf::TSKModel random_model(evonf::Rng& rng, std::size_t max_inputs = 3) {
    const auto n_inputs = static_cast<std::size_t>(rng.uniform_int(1, (std::int64_t)max_inputs));
    const auto mf_per_input = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const bool bell = rng.coin();
    evonf::TSKModel model;
    model.partitions.resize(n_inputs);
    for (auto& part : model.partitions)
        for (std::size_t j = 0; j < mf_per_input; ++j) {
            if (bell)
                part.push_back(evonf::BellMF{rng.uniform(0.3, 1.5), rng.uniform(0.5, 3.0),
                                             rng.uniform(-0.5, 1.5)});
            else
                part.push_back(evonf::GaussianMF{rng.uniform(-0.5, 1.5), rng.uniform(0.2, 1.0)});
        }
    model.rulebase = evonf::grid_partition_init(n_inputs, mf_per_input);
    const std::uint32_t full = (mf_per_input == 32) ? ~0u : ((1u << mf_per_input) - 1u);
    for (auto& rule : model.rulebase.rules) {
        bool any_label = false;
        for (auto& mask : rule.antecedent) {
            if (rng.coin(0.15)) {
                mask = 0; // don't care
            } else if (rng.coin(0.3)) {
                mask |= 1u << rng.index(mf_per_input); // fuzzy OR of two labels
            }
            mask &= full;
            any_label |= mask != 0;
        }
        if (!any_label) rule.antecedent[0] = 1u << rng.index(mf_per_input);
        for (auto& c : rule.consequent) c = rng.uniform(-2.0, 2.0);
    }
    bool any = false;
    for (auto& bit : model.rulebase.active) {
        bit = rng.coin(0.7) ? 1 : 0;
        any |= bit != 0;
    }
    if (!any) model.rulebase.active.front() = 1;
    model.tnorm.p = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
    return model;
}

// Sample for the inference oracle. Redraws points whose total firing lands
// near the fallback threshold, where the two implementations could take
// different branches.
inline std::vector<double> random_probe(evonf::Rng& rng, const evonf::TSKModel& model) {
    std::vector<double> x(model.n_inputs());
    for (int attempt = 0; attempt < 100; ++attempt) {
        for (auto& v : x) v = rng.uniform(-0.5, 1.5);
        const double total = total_firing_naive(model, x);
        if (total < 1e-14 || total > 1e-10) return x;
    }
    return x;
}

} // namespace oracle
