#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "evonf/dataset.hpp"
#include "evonf/genome.hpp"
#include "evonf/local_search.hpp"
#include "evonf/rng.hpp"

namespace evonf {

/// Knobs of the evolutionary loop. Defaults are the reference configuration
/// for the export-intensity task.
struct EvolutionConfig {
    std::size_t population_size = 40;
    std::size_t max_generations = 35;
    /// Linear-rank weight of the worst individual relative to uniform; the
    /// best gets 2 minus this. 1 = uniform selection, 0 = the worst is
    /// never picked.
    double selection_pressure = 0.50;
    double elitism_fraction = 0.05; ///< ceil(fraction * population) copied unchanged
    double mutation_rate_start = 0.50;
    double mutation_rate_end = 0.05; ///< per-gene rate anneals linearly to this
    double mutation_shape_b = 5.0;   ///< non-uniform mutation decay exponent
    std::size_t gd_epochs_per_eval = 10;
    std::uint64_t rng_seed = 1;
    double early_stop_rmse = 0.0; ///< stop once best fitness reaches this; <= 0 disables
    std::size_t mf_per_input = 2;
    MFKind mf_kind = MFKind::gaussian;
    GdOptions gd_options{};
};

/// Time position of the non-uniform mutation: step t of t_max, decay
/// exponent b. The perturbation span shrinks to zero as t approaches t_max.
struct MutationSchedule {
    std::size_t t = 0;
    std::size_t t_max = 1;
    double b = 5.0;
};

/// Non-uniform mutation of one gene. Draws a direction coin, then a
/// magnitude fraction gamma; the step is delta(t, distance-to-bound) =
/// distance * (1 - gamma^((1 - t/t_max)^b)). At t == t_max the step is
/// exactly zero. The result is clamped into the bounds.
double nonuniform_mutate(double gene, GeneBounds bounds, const MutationSchedule& sched, Rng& rng);

/// Linear rank selection over fitness values (lower is better). Tied
/// individuals get their ranks in random order per call. Returns the chosen
/// index. pressure as in EvolutionConfig::selection_pressure.
std::size_t rank_select(std::span<const double> fitness, double pressure, Rng& rng);

/// Whole-arithmetic crossover on the real genes (one blend factor per pair,
/// children lambda*a + (1-lambda)*b and the mirror) and uniform crossover on
/// the selection bits. Children inherit parent a's bounds.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

/// Mutates each real gene with probability `rate` by nonuniform_mutate and
/// flips each selection bit with the same probability. An all-zero selection
/// vector is repaired by re-activating the highest-indexed rule.
void mutate_chromosome(Chromosome& chrom, const MutationSchedule& sched, double rate, Rng& rng);

/// Fitness of one chromosome with Lamarckian write-back: decode, run
/// gd_epochs full-batch gradient steps with the chromosome's own learning
/// genes, re-encode (which clamps tuned parameters into their gene bounds),
/// and measure training RMSE on the re-decoded model. The returned fitness
/// therefore equals loss(decode(refined), train) exactly. If fine-tuning
/// produced non-finite parameters the write-back is discarded and the
/// original chromosome is evaluated without gradient steps.
struct FitnessResult {
    double fitness = 0.0;
    Chromosome refined;
};
FitnessResult evaluate_fitness(const Chromosome& chrom, const ChromosomeLayout& layout,
                               const Dataset& train, std::size_t gd_epochs,
                               const GdOptions& opts = {});

/// One row of the per-generation trace. Generation 0 is the evaluated
/// initial population. best_test_rmse and active_rules describe the
/// generation's best-by-training individual.
struct GenerationLog {
    std::size_t generation = 0;
    double best_train_rmse = 0.0;
    double mean_train_rmse = 0.0;
    double best_test_rmse = 0.0;
    std::size_t active_rules = 0;
};

struct EvolveResult {
    EvoNFCandidate best;        ///< decoded best-by-training individual
    Chromosome best_chromosome; ///< its stored (refined) genes
    double best_fitness = 0.0;  ///< == loss(best.model, train)
    std::vector<GenerationLog> log;
};

/// Runs the full hierarchical optimization on a grid-partition model:
/// random initial population within data-derived gene bounds, rank
/// selection, arithmetic/uniform crossover, annealed non-uniform mutation,
/// elitist replacement, and embedded gradient fine-tuning inside every
/// fitness evaluation. Deterministic in (config, train, test); reproduction
/// draws come from per-generation streams derived from config.rng_seed.
EvolveResult evolve(const EvolutionConfig& config, const Dataset& train, const Dataset& test);

} // namespace evonf
