#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evonf/membership.hpp"
#include "evonf/tnorm.hpp"

namespace evonf {

/// One Takagi-Sugeno rule.
///
/// The antecedent is a position-dependent code: one bitmask per input
/// variable, bit j set meaning "label j of that variable's partition
/// participates". Multiple bits within one variable are joined by fuzzy OR
/// (max); a variable whose mask is all-zero is a don't-care and is skipped
/// when the rule fires. Partitions are limited to 32 labels per variable.
///
/// The consequent is linear: y = c[0] + c[1]*x1 + ... + c[n]*xn.
struct Rule {
    std::vector<std::uint32_t> antecedent; ///< per-variable label mask
    std::vector<double> consequent;        ///< size n_inputs + 1
};

/// Ordered rule list plus a parallel selection vector (1 = rule is active).
struct RuleBase {
    std::vector<Rule> rules;
    std::vector<std::uint8_t> active;
};

/// A complete Takagi-Sugeno fuzzy inference system: per-input fuzzy
/// partitions, a rule base, and the parameterized intersection operator.
/// Immutable during inference; infer() is pure and thread-safe.
struct TSKModel {
    std::vector<std::vector<MembershipFunction>> partitions; ///< [input][label]
    RuleBase rulebase;
    TNormParam tnorm{1.0};

    std::size_t n_inputs() const { return partitions.size(); }
};

/// Below this total firing mass infer() falls back to the unweighted mean of
/// the active rules' consequent values.
inline constexpr double kFiringEpsilon = 1e-12;

/// Default cap on the rule count grid_partition_init may generate.
inline constexpr std::size_t kDefaultRuleCap = 1'000'000;

/// Antecedent truth degree of one rule at input x, in [0, 1].
///
/// Per variable, memberships of the labels named by the mask are joined by
/// max; across variables the values are combined with the Schweizer-Sklar
/// T-norm, folded left to right in variable order. Don't-care variables are
/// skipped; a membership of exactly 0 short-circuits to firing 0.
/// Throws DimensionMismatch if x does not match the model.
double firing_strength(const TSKModel& model, const Rule& rule, std::span<const double> x);

/// Takagi-Sugeno output: firing-strength-weighted average of the active
/// rules' consequent values. If the total firing mass is below
/// kFiringEpsilon the unweighted mean of the active consequents is returned.
/// Throws NoActiveRules when no rule is selected.
double infer(const TSKModel& model, std::span<const double> x);

/// Linear consequent value c0 + c . x of one rule.
double consequent_value(const Rule& rule, std::span<const double> x);

/// Builds the full grid rule base: one rule per element of the Cartesian
/// product of labels (exactly one bit per variable), all rules active,
/// consequents zero-initialized. Rule count is mf_per_input^n_inputs; the
/// last variable's label varies fastest. Throws SizeOverflow if the count
/// exceeds `cap` or mf_per_input exceeds 32.
RuleBase grid_partition_init(std::size_t n_inputs, std::size_t mf_per_input,
                             std::size_t cap = kDefaultRuleCap);

/// Number of selected rules. Does not validate the rule base.
std::size_t count_active(const RuleBase& rulebase);

/// Checks all model invariants (partition/antecedent consistency, consequent
/// lengths, at least one active rule, valid MF and T-norm parameters).
void validate_model(const TSKModel& model);

} // namespace evonf
