#include "evonf/model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "evonf/errors.hpp"

namespace evonf {

namespace {

// Fuzzy OR across the labels named by the mask: max of their memberships.
double variable_membership(const std::vector<MembershipFunction>& partition,
                           std::uint32_t mask, double x) {
    double best = 0.0;
    for (std::size_t j = 0; j < partition.size(); ++j) {
        if ((mask >> j) & 1u) {
            double m = eval_mf(partition[j], x);
            if (m > best) best = m;
        }
    }
    return best;
}

} // namespace

double firing_strength(const TSKModel& model, const Rule& rule, std::span<const double> x) {
    if (x.size() != model.n_inputs())
        throw DimensionMismatch("input has " + std::to_string(x.size()) + " values, model expects " +
                                std::to_string(model.n_inputs()));
    if (rule.antecedent.size() != model.n_inputs())
        throw DimensionMismatch("rule antecedent covers " + std::to_string(rule.antecedent.size()) +
                                " variables, model has " + std::to_string(model.n_inputs()));

    // Fold in S-space: pow(w, -p) adds across operands, so the whole
    // conjunction needs one pow per operand plus one final root. Operands
    // equal to 1 are identity elements and are skipped outright, which keeps
    // T(1, m) == m exact; the max{0, .} clamp of the T-norm cannot trigger
    // for operands in (0, 1), so it is not re-checked here.
    const double p = model.tnorm.p;
    double single = 1.0;
    double s_accum = 0.0;
    std::size_t folded = 0;
    for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
        std::uint32_t mask = rule.antecedent[i];
        if (mask == 0) continue; // don't-care
        double m = variable_membership(model.partitions[i], mask, x[i]);
        if (m == 0.0) return 0.0;
        if (m == 1.0) continue;
        single = m;
        s_accum += std::pow(m, -p);
        ++folded;
    }
    if (folded == 0) return 1.0;
    if (folded == 1) return single;
    double s = s_accum - static_cast<double>(folded - 1);
    return std::pow(s, -1.0 / p);
}

double consequent_value(const Rule& rule, std::span<const double> x) {
    double g = rule.consequent[0];
    for (std::size_t i = 0; i < x.size(); ++i) g += rule.consequent[i + 1] * x[i];
    return g;
}

double infer(const TSKModel& model, std::span<const double> x) {
    const auto& rb = model.rulebase;
    double total = 0.0;
    double weighted = 0.0;
    double plain = 0.0;
    std::size_t n_active = 0;
    for (std::size_t k = 0; k < rb.rules.size(); ++k) {
        if (!rb.active[k]) continue;
        ++n_active;
        double w = firing_strength(model, rb.rules[k], x);
        double g = consequent_value(rb.rules[k], x);
        total += w;
        weighted += w * g;
        plain += g;
    }
    if (n_active == 0) throw NoActiveRules();
    if (total < kFiringEpsilon) return plain / static_cast<double>(n_active);
    return weighted / total;
}

RuleBase grid_partition_init(std::size_t n_inputs, std::size_t mf_per_input, std::size_t cap) {
    if (n_inputs == 0) throw InvalidParameter("grid needs at least one input");
    if (mf_per_input == 0) throw InvalidParameter("grid needs at least one label per input");
    if (mf_per_input > 32)
        throw SizeOverflow("partition of " + std::to_string(mf_per_input) +
                           " labels exceeds the 32-bit antecedent mask");

    std::size_t count = 1;
    for (std::size_t i = 0; i < n_inputs; ++i) {
        if (count > cap / mf_per_input)
            throw SizeOverflow("grid of " + std::to_string(mf_per_input) + "^" +
                               std::to_string(n_inputs) + " rules exceeds cap " + std::to_string(cap));
        count *= mf_per_input;
    }

    RuleBase rb;
    rb.rules.resize(count);
    rb.active.assign(count, 1);
    std::vector<std::size_t> digits(n_inputs, 0);
    for (std::size_t k = 0; k < count; ++k) {
        Rule& r = rb.rules[k];
        r.antecedent.resize(n_inputs);
        for (std::size_t i = 0; i < n_inputs; ++i) r.antecedent[i] = 1u << digits[i];
        r.consequent.assign(n_inputs + 1, 0.0);
        // odometer increment, last variable fastest
        for (std::size_t i = n_inputs; i-- > 0;) {
            if (++digits[i] < mf_per_input) break;
            digits[i] = 0;
        }
    }
    return rb;
}

std::size_t count_active(const RuleBase& rulebase) {
    std::size_t n = 0;
    for (std::uint8_t a : rulebase.active) n += (a != 0);
    return n;
}

void validate_model(const TSKModel& model) {
    if (model.partitions.empty()) throw InvalidParameter("model has no inputs");
    for (std::size_t i = 0; i < model.partitions.size(); ++i) {
        if (model.partitions[i].empty())
            throw InvalidParameter("input " + std::to_string(i + 1) + " has an empty partition");
        if (model.partitions[i].size() > 32)
            throw SizeOverflow("input " + std::to_string(i + 1) + " has more than 32 labels");
        for (const auto& mf : model.partitions[i]) validate_mf(mf);
    }
    if (model.tnorm.p <= 0.0) throw InvalidParameter("T-norm parameter must be positive");

    const auto& rb = model.rulebase;
    if (rb.active.size() != rb.rules.size())
        throw DimensionMismatch("selection vector covers " + std::to_string(rb.active.size()) +
                                " rules, rule base has " + std::to_string(rb.rules.size()));
    for (std::size_t k = 0; k < rb.rules.size(); ++k) {
        const Rule& r = rb.rules[k];
        if (r.antecedent.size() != model.n_inputs())
            throw DimensionMismatch("rule " + std::to_string(k + 1) + " antecedent covers " +
                                    std::to_string(r.antecedent.size()) + " variables");
        if (r.consequent.size() != model.n_inputs() + 1)
            throw DimensionMismatch("rule " + std::to_string(k + 1) + " consequent has " +
                                    std::to_string(r.consequent.size()) + " coefficients");
        bool any_label = false;
        for (std::size_t i = 0; i < r.antecedent.size(); ++i) {
            std::uint32_t mask = r.antecedent[i];
            std::size_t labels = model.partitions[i].size();
            if (labels < 32 && (mask >> labels) != 0)
                throw InvalidParameter("rule " + std::to_string(k + 1) + " names label " +
                                       std::to_string(std::bit_width(mask)) + " of input " +
                                       std::to_string(i + 1) + ", partition has " +
                                       std::to_string(labels));
            any_label |= mask != 0;
        }
        if (!any_label)
            throw InvalidParameter("rule " + std::to_string(k + 1) + " has an empty antecedent");
    }
    if (count_active(rb) == 0) throw NoActiveRules();
}

} // namespace evonf
