#include "evonf/genome.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "evonf/errors.hpp"
#include "evonf/tnorm.hpp"

namespace evonf {

namespace {

double clamp_to(double v, GeneBounds b) { return std::clamp(v, b.lo, b.hi); }

void check_sizes(const Chromosome& c, const ChromosomeLayout& layout) {
    if (c.reals.size() != layout.real_gene_count())
        throw LayoutMismatch("chromosome has " + std::to_string(c.reals.size()) +
                             " real genes, layout expects " +
                             std::to_string(layout.real_gene_count()));
    if (c.rule_bits.size() != layout.rule_count())
        throw LayoutMismatch("chromosome has " + std::to_string(c.rule_bits.size()) +
                             " selection bits, layout expects " +
                             std::to_string(layout.rule_count()));
    if (c.bounds.size() != c.reals.size())
        throw LayoutMismatch("bounds cover " + std::to_string(c.bounds.size()) + " of " +
                             std::to_string(c.reals.size()) + " genes");
}

} // namespace

double angular_encode(double coefficient) {
    double degrees = std::atan(coefficient) * (180.0 / std::numbers::pi);
    // the conversion product can round onto the open bound for astronomically
    // large coefficients; the gene must stay strictly inside (-90, 90)
    if (degrees >= 90.0) return std::nextafter(90.0, 0.0);
    if (degrees <= -90.0) return std::nextafter(-90.0, 0.0);
    return degrees;
}

double angular_decode(double degrees) {
    if (!(std::abs(degrees) < 90.0))
        throw OutOfRange("angle " + std::to_string(degrees) + " outside (-90, 90) degrees");
    return std::tan(degrees * (std::numbers::pi / 180.0));
}

ChromosomeLayout make_grid_layout(std::size_t n_inputs, std::size_t mf_per_input, MFKind kind,
                                  std::size_t cap) {
    RuleBase rb = grid_partition_init(n_inputs, mf_per_input, cap);
    ChromosomeLayout layout;
    layout.n_inputs = n_inputs;
    layout.mf_per_input = mf_per_input;
    layout.kind = kind;
    layout.antecedents.reserve(rb.rules.size());
    for (const Rule& r : rb.rules) layout.antecedents.push_back(r.antecedent);
    return layout;
}

ChromosomeLayout layout_of(const TSKModel& model) {
    if (model.partitions.empty()) throw LayoutMismatch("model has no inputs");
    ChromosomeLayout layout;
    layout.n_inputs = model.n_inputs();
    layout.mf_per_input = model.partitions[0].size();
    layout.kind = mf_kind(model.partitions[0][0]);
    for (const auto& part : model.partitions) {
        if (part.size() != layout.mf_per_input)
            throw LayoutMismatch("partitions are not uniformly sized");
        for (const auto& mf : part)
            if (mf_kind(mf) != layout.kind) throw LayoutMismatch("mixed MF families");
    }
    layout.antecedents.reserve(model.rulebase.rules.size());
    for (const Rule& r : model.rulebase.rules) layout.antecedents.push_back(r.antecedent);
    return layout;
}

std::vector<GeneBounds> default_gene_bounds(const ChromosomeLayout& layout,
                                            std::span<const double> x_min,
                                            std::span<const double> x_max) {
    if (x_min.size() != layout.n_inputs || x_max.size() != layout.n_inputs)
        throw LayoutMismatch("data bounds cover " + std::to_string(x_min.size()) +
                             " inputs, layout has " + std::to_string(layout.n_inputs));

    std::vector<GeneBounds> bounds(layout.real_gene_count());
    for (std::size_t i = 0; i < layout.n_inputs; ++i) {
        double range = x_max[i] - x_min[i];
        if (!(range > 0.0))
            throw ZeroRange("input " + std::to_string(i + 1) + " has no spread");
        GeneBounds center{x_min[i] - 0.5 * range, x_max[i] + 0.5 * range};
        GeneBounds width{0.05 * range, 1.0 * range};
        for (std::size_t j = 0; j < layout.mf_per_input; ++j) {
            for (std::size_t k = 0; k < layout.params_per_mf(); ++k) {
                GeneBounds b;
                if (layout.kind == MFKind::bell && k == 1)
                    b = GeneBounds{kBellExponentMin, kBellExponentMax};
                else if (mf_param_is_width(layout.kind, k))
                    b = width;
                else
                    b = center;
                bounds[layout.mf_gene_index(i, j, k)] = b;
            }
        }
    }
    for (std::size_t k = 0; k < layout.rule_count(); ++k)
        for (std::size_t j = 0; j <= layout.n_inputs; ++j)
            bounds[layout.consequent_gene_index(k, j)] =
                GeneBounds{-kAngularBoundDeg, kAngularBoundDeg};
    bounds[layout.tnorm_gene_index()] = GeneBounds{kTNormParamMin, kTNormParamMax};
    bounds[layout.rate_gene_index()] = GeneBounds{kRateMin, kRateMax};
    bounds[layout.momentum_gene_index()] = GeneBounds{kMomentumMin, kMomentumMax};
    return bounds;
}

Chromosome random_chromosome(const ChromosomeLayout& layout, std::vector<GeneBounds> bounds,
                             Rng& rng) {
    if (bounds.size() != layout.real_gene_count())
        throw LayoutMismatch("bounds cover " + std::to_string(bounds.size()) +
                             " genes, layout expects " + std::to_string(layout.real_gene_count()));
    Chromosome c;
    c.bounds = std::move(bounds);
    c.reals.resize(layout.real_gene_count());
    for (std::size_t g = 0; g < c.reals.size(); ++g)
        c.reals[g] = rng.uniform(c.bounds[g].lo, c.bounds[g].hi);
    c.rule_bits.resize(layout.rule_count());
    bool any = false;
    for (auto& bit : c.rule_bits) {
        bit = rng.coin() ? 1 : 0;
        any |= bit != 0;
    }
    if (!any) c.rule_bits.back() = 1;
    return c;
}

Chromosome encode(const EvoNFCandidate& candidate, const ChromosomeLayout& layout,
                  std::vector<GeneBounds> bounds) {
    const TSKModel& m = candidate.model;
    if (m.n_inputs() != layout.n_inputs || m.rulebase.rules.size() != layout.rule_count())
        throw LayoutMismatch("model shape does not match layout");
    for (std::size_t i = 0; i < layout.n_inputs; ++i)
        if (m.partitions[i].size() != layout.mf_per_input)
            throw LayoutMismatch("partition " + std::to_string(i + 1) + " has " +
                                 std::to_string(m.partitions[i].size()) + " labels, layout expects " +
                                 std::to_string(layout.mf_per_input));
    for (std::size_t k = 0; k < layout.rule_count(); ++k)
        if (m.rulebase.rules[k].antecedent != layout.antecedents[k])
            throw LayoutMismatch("rule " + std::to_string(k + 1) +
                                 " antecedent differs from the layout");
    if (bounds.size() != layout.real_gene_count())
        throw LayoutMismatch("bounds cover " + std::to_string(bounds.size()) +
                             " genes, layout expects " + std::to_string(layout.real_gene_count()));

    Chromosome c;
    c.bounds = std::move(bounds);
    c.reals.resize(layout.real_gene_count());
    for (std::size_t i = 0; i < layout.n_inputs; ++i)
        for (std::size_t j = 0; j < layout.mf_per_input; ++j) {
            const MembershipFunction& mf = m.partitions[i][j];
            if (mf_kind(mf) != layout.kind) throw LayoutMismatch("MF family differs from the layout");
            for (std::size_t k = 0; k < layout.params_per_mf(); ++k) {
                std::size_t g = layout.mf_gene_index(i, j, k);
                c.reals[g] = clamp_to(mf_param(mf, k), c.bounds[g]);
            }
        }
    for (std::size_t k = 0; k < layout.rule_count(); ++k)
        for (std::size_t j = 0; j <= layout.n_inputs; ++j) {
            std::size_t g = layout.consequent_gene_index(k, j);
            c.reals[g] = clamp_to(angular_encode(m.rulebase.rules[k].consequent[j]), c.bounds[g]);
        }
    std::size_t tg = layout.tnorm_gene_index();
    c.reals[tg] = clamp_to(m.tnorm.p, c.bounds[tg]);
    c.reals[tg + 1] = clamp_to(candidate.learn.rate, c.bounds[tg + 1]);
    c.reals[tg + 2] = clamp_to(candidate.learn.momentum, c.bounds[tg + 2]);

    c.rule_bits.assign(m.rulebase.active.begin(), m.rulebase.active.end());
    for (auto& bit : c.rule_bits) bit = bit ? 1 : 0;
    return c;
}

EvoNFCandidate decode(const Chromosome& chrom, const ChromosomeLayout& layout) {
    check_sizes(chrom, layout);
    EvoNFCandidate cand;
    TSKModel& m = cand.model;
    m.partitions.resize(layout.n_inputs);
    for (std::size_t i = 0; i < layout.n_inputs; ++i) {
        m.partitions[i].resize(layout.mf_per_input);
        for (std::size_t j = 0; j < layout.mf_per_input; ++j) {
            MembershipFunction mf =
                layout.kind == MFKind::bell ? MembershipFunction{BellMF{}} : MembershipFunction{GaussianMF{}};
            for (std::size_t k = 0; k < layout.params_per_mf(); ++k) {
                std::size_t g = layout.mf_gene_index(i, j, k);
                set_mf_param(mf, k, clamp_to(chrom.reals[g], chrom.bounds[g]));
            }
            m.partitions[i][j] = mf;
        }
    }
    m.rulebase.rules.resize(layout.rule_count());
    for (std::size_t k = 0; k < layout.rule_count(); ++k) {
        Rule& r = m.rulebase.rules[k];
        r.antecedent = layout.antecedents[k];
        r.consequent.resize(layout.n_inputs + 1);
        for (std::size_t j = 0; j <= layout.n_inputs; ++j) {
            std::size_t g = layout.consequent_gene_index(k, j);
            r.consequent[j] = angular_decode(clamp_to(chrom.reals[g], chrom.bounds[g]));
        }
    }
    m.rulebase.active.assign(chrom.rule_bits.begin(), chrom.rule_bits.end());
    bool any = false;
    for (auto& bit : m.rulebase.active) {
        bit = bit ? 1 : 0;
        any |= bit != 0;
    }
    if (!any) m.rulebase.active.back() = 1;

    std::size_t tg = layout.tnorm_gene_index();
    m.tnorm.p = clamp_to(chrom.reals[tg], chrom.bounds[tg]);
    cand.learn.rate = clamp_to(chrom.reals[tg + 1], chrom.bounds[tg + 1]);
    cand.learn.momentum = clamp_to(chrom.reals[tg + 2], chrom.bounds[tg + 2]);
    return cand;
}

void validate_chromosome(const Chromosome& chrom, const ChromosomeLayout& layout) {
    check_sizes(chrom, layout);
    for (std::size_t g = 0; g < chrom.reals.size(); ++g) {
        GeneBounds b = chrom.bounds[g];
        if (!(b.lo < b.hi))
            throw OutOfRange("gene " + std::to_string(g) + " has an empty bounds interval");
        if (chrom.reals[g] < b.lo || chrom.reals[g] > b.hi)
            throw OutOfRange("gene " + std::to_string(g) + " = " + std::to_string(chrom.reals[g]) +
                             " outside [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) + "]");
    }
    bool any = false;
    for (auto bit : chrom.rule_bits) {
        if (bit > 1)
            throw OutOfRange("selection bit is " + std::to_string(int(bit)));
        any |= bit != 0;
    }
    if (!any) throw OutOfRange("all rules deselected");
}

} // namespace evonf
