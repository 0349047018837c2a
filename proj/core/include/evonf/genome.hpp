#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evonf/local_search.hpp"
#include "evonf/model.hpp"
#include "evonf/rng.hpp"

namespace evonf {

/// Closed interval a real gene lives in. Invariant: lo < hi.
struct GeneBounds {
    double lo;
    double hi;
};

/// Consequent coefficients are evolved as angles arctan(c) in degrees, which
/// maps the whole real line into (-90, 90) and gives large coefficients
/// progressively coarser resolution. Genes stay inside this symmetric bound;
/// tan(89.9 deg) is about 573.
inline constexpr double kAngularBoundDeg = 89.9;

inline constexpr double kRateMin = 1e-3;
inline constexpr double kRateMax = 0.5;
inline constexpr double kMomentumMin = 0.0;
inline constexpr double kMomentumMax = 0.95;
inline constexpr double kBellExponentMin = 0.5;
inline constexpr double kBellExponentMax = 5.0;

/// degrees = arctan(coefficient), in (-90, 90).
double angular_encode(double coefficient);

/// coefficient = tan(degrees). Throws OutOfRange when |degrees| >= 90.
double angular_decode(double degrees);

/// Fixed structural frame a chromosome is decoded against: input and label
/// counts, MF family, and the (immutable) antecedent structure of every
/// rule. Only parameters and selection bits evolve.
struct ChromosomeLayout {
    std::size_t n_inputs = 0;
    std::size_t mf_per_input = 0;
    MFKind kind = MFKind::gaussian;
    std::vector<std::vector<std::uint32_t>> antecedents; ///< [rule][input] label masks

    std::size_t rule_count() const { return antecedents.size(); }
    std::size_t params_per_mf() const { return mf_param_count(kind); }
    std::size_t mf_gene_count() const { return n_inputs * mf_per_input * params_per_mf(); }
    std::size_t consequent_gene_count() const { return rule_count() * (n_inputs + 1); }
    /// MF genes, consequent genes, then T-norm exponent, learning rate,
    /// momentum.
    std::size_t real_gene_count() const { return mf_gene_count() + consequent_gene_count() + 3; }

    std::size_t mf_gene_index(std::size_t input, std::size_t label, std::size_t param) const {
        return (input * mf_per_input + label) * params_per_mf() + param;
    }
    std::size_t consequent_gene_index(std::size_t rule, std::size_t coeff) const {
        return mf_gene_count() + rule * (n_inputs + 1) + coeff;
    }
    std::size_t tnorm_gene_index() const { return mf_gene_count() + consequent_gene_count(); }
    std::size_t rate_gene_index() const { return tnorm_gene_index() + 1; }
    std::size_t momentum_gene_index() const { return tnorm_gene_index() + 2; }
};

/// Layout of the full grid rule base (see grid_partition_init).
ChromosomeLayout make_grid_layout(std::size_t n_inputs, std::size_t mf_per_input, MFKind kind,
                                  std::size_t cap = kDefaultRuleCap);

/// Layout matching an existing model. Requires uniform partition sizes and a
/// single MF family; throws LayoutMismatch otherwise.
ChromosomeLayout layout_of(const TSKModel& model);

/// The evolved representation: real genes (flat, in layout order) plus one
/// selection bit per rule. bounds is parallel to reals; every gene stays
/// inside its bounds.
struct Chromosome {
    std::vector<double> reals;
    std::vector<std::uint8_t> rule_bits;
    std::vector<GeneBounds> bounds;
};

/// Everything a chromosome decodes into: the fuzzy system plus the learning
/// hyperparameters its fine-tuning runs with.
struct EvoNFCandidate {
    TSKModel model;
    LearnParams learn;
};

/// Bounds for every real gene: MF centers span the data range widened by
/// half a range on each side, widths span [5%, 100%] of the range, bell
/// exponents [kBellExponentMin, kBellExponentMax], consequent angles
/// +-kAngularBoundDeg, T-norm [kTNormParamMin, kTNormParamMax], and the
/// learning genes their constants above. x_min/x_max are per-input data
/// bounds; a zero range throws ZeroRange.
std::vector<GeneBounds> default_gene_bounds(const ChromosomeLayout& layout,
                                            std::span<const double> x_min,
                                            std::span<const double> x_max);

/// Genes uniform within bounds, selection bits fair coins (an all-zero draw
/// is repaired to one active rule).
Chromosome random_chromosome(const ChromosomeLayout& layout, std::vector<GeneBounds> bounds,
                             Rng& rng);

/// Model -> genes. Parameters are clamped into their gene bounds, so
/// encode(decode(c)) == c for any valid chromosome, and encoding a model
/// whose parameters drifted out of bounds (after gradient steps) pulls them
/// back in. Throws LayoutMismatch when the model does not fit the layout.
Chromosome encode(const EvoNFCandidate& candidate, const ChromosomeLayout& layout,
                  std::vector<GeneBounds> bounds);

/// Genes -> model. An all-zero selection vector is repaired by activating
/// the highest-indexed rule. Throws LayoutMismatch on size disagreement.
EvoNFCandidate decode(const Chromosome& chrom, const ChromosomeLayout& layout);

/// Checks sizes against the layout and every gene against its bounds.
/// Throws LayoutMismatch / OutOfRange.
void validate_chromosome(const Chromosome& chrom, const ChromosomeLayout& layout);

} // namespace evonf
